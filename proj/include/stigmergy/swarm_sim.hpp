#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stigmergy/cross_learning.hpp"
#include "stigmergy/environments.hpp"
#include "stigmergy/foraging_model.hpp"
#include "stigmergy/matrix.hpp"
#include "stigmergy/policy.hpp"
#include "stigmergy/rng.hpp"

namespace stigmergy {

struct PopulationConfig {
    /// Fraction of pheromone-blind explorers, resampled per decision.
    double epsilon = 0.0;
    /// Sequential decisions per epoch.
    std::size_t batch_size = 100;

    void validate() const;
    bool operator==(const PopulationConfig&) const = default;
};

struct SimConfig {
    explicit SimConfig(BanditSpec environment) : env(std::move(environment)) {}

    BanditSpec env;
    PopulationConfig population;
    std::size_t memory_capacity = 350;
    double q_deposit = 0.02;
    std::size_t epochs = 500;
    std::uint64_t master_seed = 0;
    /// Starting distribution; initial_policy(num_arms) when unset.
    std::optional<Policy> start_policy;

    Policy starting_policy() const;
    void validate() const;
    bool operator==(const SimConfig&) const = default;
};

/// Policy after every epoch. Row 0 is the starting policy, row t the policy
/// after t epochs.
struct RunTrace {
    Matrix policy_history;
    std::uint64_t run_seed = 0;

    std::size_t epochs() const noexcept { return policy_history.rows() == 0 ? 0 : policy_history.rows() - 1; }
    bool operator==(const RunTrace&) const = default;
};

/// Mutable state of one run.
struct SwarmState {
    Policy policy;
    ReplayBuffer buffer;
};

/// Runs one batch of sequential decisions. For each decision:
///  1. with probability epsilon the decider is an explorer and picks an arm in
///     proportion to the current noiseless rewards; otherwise it samples the policy;
///  2. the chosen arm's attractiveness is sampled with noise;
///  3. the gain Q a / (sum_j tau_j A_j + Q a) is formed from the buffered
///     pheromone estimate tau and the noiseless rewards A;
///  4. the policy takes a cross-learning step with that gain;
///  5. the deposit (arm, a) enters the buffer, explorers included.
/// `epoch` selects the reward table.
void run_epoch(SwarmState& state, const SimConfig& config, std::int64_t epoch, RngStream& rng);

/// Deterministic single run: identical inputs give bit-identical traces.
RunTrace run_experiment(const SimConfig& config, std::uint64_t run_seed);

/// Seed of run `index` in an ensemble: mix64 chain over (master_seed, index).
std::uint64_t ensemble_run_seed(std::uint64_t master_seed, std::size_t index) noexcept;

/// N independent runs ordered by index. `threads == 0` uses all cores; the
/// result never depends on the thread count.
std::vector<RunTrace> run_ensemble(const SimConfig& config, std::size_t num_runs, std::size_t threads = 0);

/// Four-patch validation arena: patches of given bacterial density plus an
/// optional zero-density "outside" pseudo-patch listed last.
struct StaticScenario {
    std::vector<double> densities{0.2, 0.1, 0.05, 0.025};
    bool include_outside = true;
    /// Initial mass outside the patches; the rest is shared evenly by the patches.
    double outside_initial_mass = 0.96;
    std::size_t epochs = 120;
    std::size_t memory_capacity = 350;
    std::size_t batch_size = 100;
    double noise_std = 0.0;
    double epsilon = 0.0;

    std::size_t num_arms() const noexcept { return densities.size() + (include_outside ? 1 : 0); }
    bool operator==(const StaticScenario&) const = default;
};

std::vector<double> scenario_attractiveness(const StaticScenario& scenario, const SigmoidParams& params);
Policy scenario_start_policy(const StaticScenario& scenario);
SimConfig make_static_config(const StaticScenario& scenario, const SigmoidParams& params, double q_deposit,
                             std::uint64_t master_seed);

}  // namespace stigmergy
