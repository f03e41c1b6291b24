#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "stigmergy/policy.hpp"
#include "stigmergy/rng.hpp"

namespace stigmergy {

/// Cross-learning update. `effective_reward` is the learning rate times the
/// reward (or, for a pheromone swarm, Q * R_i); it must lie in [0, 1].
Policy cl_update(const Policy& policy, std::size_t chosen, double effective_reward);

/// Q A / (evaporated_total + Q A), where evaporated_total = rho * sum_j tau_j A_j.
/// Throws degenerate_state_error when the denominator is zero.
double stigmergic_gain_from_total(double evaporated_total, double q_deposit, double chosen_attractiveness);

/// Effective reward a deposit on `chosen` hands to the policy:
/// Q A_c / (rho sum_j tau_j A_j + Q A_c).
double stigmergic_gain(std::span<const double> attractivenesses, std::span<const double> tau, double rho,
                       double q_deposit, std::size_t chosen);

/// One remembered deposit.
struct Deposit {
    std::size_t arm;
    double sampled_attractiveness;

    bool operator==(const Deposit&) const = default;
};

/// Bounded FIFO of deposits; its window stands in for evaporation.
class ReplayBuffer {
public:
    /// capacity is the memory size and must be positive.
    explicit ReplayBuffer(std::size_t capacity);

    /// Appends a deposit, evicting the oldest one once the buffer is full.
    void push(std::size_t arm, double sampled_attractiveness);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::deque<Deposit>& entries() const noexcept { return entries_; }

    /// Number of stored deposits on `arm`.
    std::size_t count(std::size_t arm) const noexcept;
    /// One past the largest arm index ever stored.
    std::size_t arm_span() const noexcept { return counts_.size(); }

    bool operator==(const ReplayBuffer&) const = default;

private:
    std::size_t capacity_;
    std::deque<Deposit> entries_;
    std::vector<std::size_t> counts_;
};

/// Pheromone estimate per arm: 1 + Q * (deposits on the arm inside the window).
/// The baseline of 1 is never evicted. Throws if the buffer holds an arm >= num_arms.
std::vector<double> buffered_tau(const ReplayBuffer& buffer, std::size_t num_arms, double q_deposit);

/// Replicator drift pi_a (q_a - v) with v = sum_b pi_b q_b.
std::vector<double> replicator_rhs(const Policy& policy, std::span<const double> expected_payoffs);

struct DriftEstimate {
    std::vector<double> mean;
    std::vector<double> standard_error;
};

/// Monte-Carlo estimate of E[pi(t+1) - pi(t)] for one cross-learning step,
/// drawing the arm from `policy` and applying effective reward gain * payoff.
DriftEstimate estimate_one_step_drift(const Policy& policy, std::span<const double> payoffs, double gain,
                                      std::size_t samples, RngStream& rng);

/// Deliberate defects for exercising the verifier's negative path.
enum class EquivalenceFault {
    none,
    /// Gain computed from the already-evaporated field (rho applied twice).
    late_evaporation,
};

/// Co-simulates the explicit pheromone field and the cross-learning policy on
/// one shared choice sequence (drawn from the field) and returns the largest
/// absolute gap between the two distributions over all steps and patches.
double verify_equivalence(std::span<const double> attractivenesses, double rho, double q_deposit, std::size_t steps,
                          std::uint64_t seed, EquivalenceFault fault = EquivalenceFault::none);

struct EquivalenceSuiteResult {
    std::size_t configurations = 0;
    double max_deviation = 0.0;
    std::size_t worst_configuration = 0;
};

/// Runs verify_equivalence over random configurations: 2..5 patches,
/// attractiveness in (0, 10], rho in [0, 1], Q in (0, 0.1].
EquivalenceSuiteResult run_equivalence_suite(std::size_t configurations, std::size_t steps,
                                             std::uint64_t master_seed,
                                             EquivalenceFault fault = EquivalenceFault::none);

}  // namespace stigmergy
