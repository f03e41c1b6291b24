#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stigmergy/foraging_model.hpp"
#include "stigmergy/matrix.hpp"
#include "stigmergy/swarm_sim.hpp"

namespace stigmergy {

struct Bounds {
    double lower;
    double upper;

    bool operator==(const Bounds&) const = default;
};

/// DE/rand/1/bin settings. population == 0 means 15 x dimension.
struct DeParams {
    std::size_t population = 0;
    double differential_weight = 0.8;
    double crossover_rate = 0.9;
    std::size_t max_generations = 200;
    std::uint64_t seed = 0;
    /// Stop once max - min fitness across the population is <= this.
    double convergence_tol = 1e-12;
    /// Worker threads for fitness evaluation (0 = all cores).
    std::size_t threads = 0;

    bool operator==(const DeParams&) const = default;
};

struct DeResult {
    std::vector<double> best;
    double best_fitness = 0.0;
    /// Best fitness after the initial population and after every generation.
    std::vector<double> history;
    std::size_t generations = 0;
    std::size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `objective` over the box. Mutants leaving the box are reflected
/// back into it; non-finite fitness counts as +infinity. Deterministic given
/// the seed, regardless of thread count.
DeResult differential_evolution(const Objective& objective, std::span<const Bounds> bounds, const DeParams& params);

/// Parameter vector layout used by the occupancy fit.
enum FitParameter : std::size_t { kDynamicRange = 0, kSteepness = 1, kDensityAttract = 2, kDeposit = 3 };
inline constexpr std::size_t kFitDimension = 4;

struct FitSpec {
    /// Box for (H, k, D_attract, Q).
    std::array<Bounds, kFitDimension> bounds{{{30.0, 80.0}, {0.15, 0.45}, {0.001, 0.01}, {0.001, 0.1}}};
    /// Occupancy trajectory to match: (epochs + 1) x arms.
    Matrix target;
    StaticScenario scenario;
    /// Runs averaged per fitness evaluation, all with fixed seeds.
    std::size_t runs_per_evaluation = 4;
    std::uint64_t simulation_seed = 0;
    DeParams de;
};

struct FitResult {
    SigmoidParams sigmoid;
    double q_deposit = 0.0;
    double best_fitness = 0.0;
    std::vector<double> history;
    std::size_t generations = 0;
    std::size_t evaluations = 0;
};

/// Mean occupancy over `runs` seeded runs of the static scenario.
Matrix simulate_occupancy(const StaticScenario& scenario, const SigmoidParams& params, double q_deposit,
                          std::uint64_t seed, std::size_t runs, std::size_t threads = 1);

/// Fits (H, k, D_attract, Q) so the simulated occupancy matches the target
/// under the sum-of-squares criterion.
FitResult fit_de(const FitSpec& spec);

}  // namespace stigmergy
