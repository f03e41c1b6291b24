#include "stigmergy/cross_learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stigmergy/errors.hpp"
#include "stigmergy/pheromone_field.hpp"

namespace stigmergy {

namespace {

constexpr std::uint64_t kChoiceStream = 0x63686f696365ULL;  // "choice"
constexpr std::uint64_t kSuiteStream = 0x7375697465ULL;     // "suite"

}  // namespace

Policy cl_update(const Policy& policy, std::size_t chosen, double effective_reward) {
    Policy next = policy;
    next.reinforce(chosen, effective_reward);
    return next;
}

double stigmergic_gain_from_total(double evaporated_total, double q_deposit, double chosen_attractiveness) {
    const double deposit = q_deposit * chosen_attractiveness;
    const double denominator = evaporated_total + deposit;
    if (!(denominator > 0.0)) {
        throw degenerate_state_error("stigmergic gain has a zero denominator");
    }
    return deposit / denominator;
}

double stigmergic_gain(std::span<const double> attractivenesses, std::span<const double> tau, double rho,
                       double q_deposit, std::size_t chosen) {
    if (attractivenesses.size() != tau.size()) {
        throw std::invalid_argument("attractiveness and pheromone vectors differ in length");
    }
    if (chosen >= tau.size()) {
        throw std::out_of_range("chosen arm out of range");
    }
    if (!(rho >= 0.0 && rho <= 1.0) || !(q_deposit >= 0.0)) {
        throw std::domain_error("rho must lie in [0, 1] and Q must be >= 0");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < tau.size(); ++j) {
        total += tau[j] * attractivenesses[j];
    }
    return stigmergic_gain_from_total(rho * total, q_deposit, attractivenesses[chosen]);
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) {
        throw std::domain_error("replay buffer capacity must be positive");
    }
}

void ReplayBuffer::push(std::size_t arm, double sampled_attractiveness) {
    if (entries_.size() == capacity_) {
        --counts_[entries_.front().arm];
        entries_.pop_front();
    }
    if (arm >= counts_.size()) {
        counts_.resize(arm + 1, 0);
    }
    ++counts_[arm];
    entries_.push_back(Deposit{arm, sampled_attractiveness});
}

std::size_t ReplayBuffer::count(std::size_t arm) const noexcept {
    return arm < counts_.size() ? counts_[arm] : 0;
}

std::vector<double> buffered_tau(const ReplayBuffer& buffer, std::size_t num_arms, double q_deposit) {
    for (std::size_t arm = num_arms; arm < buffer.arm_span(); ++arm) {
        if (buffer.count(arm) > 0) {
            throw std::out_of_range("replay buffer holds an arm index >= num_arms");
        }
    }
    std::vector<double> tau(num_arms);
    for (std::size_t arm = 0; arm < num_arms; ++arm) {
        tau[arm] = 1.0 + q_deposit * static_cast<double>(buffer.count(arm));
    }
    return tau;
}

std::vector<double> replicator_rhs(const Policy& policy, std::span<const double> expected_payoffs) {
    if (expected_payoffs.size() != policy.size()) {
        throw std::invalid_argument("payoff vector length does not match the policy");
    }
    double average = 0.0;
    for (std::size_t b = 0; b < policy.size(); ++b) {
        average += policy[b] * expected_payoffs[b];
    }
    std::vector<double> drift(policy.size());
    for (std::size_t a = 0; a < policy.size(); ++a) {
        drift[a] = policy[a] * (expected_payoffs[a] - average);
    }
    return drift;
}

DriftEstimate estimate_one_step_drift(const Policy& policy, std::span<const double> payoffs, double gain,
                                      std::size_t samples, RngStream& rng) {
    if (payoffs.size() != policy.size()) {
        throw std::invalid_argument("payoff vector length does not match the policy");
    }
    if (samples < 2) {
        throw std::domain_error("need at least two samples for a standard error");
    }
    const std::size_t k = policy.size();
    std::vector<double> sum(k, 0.0);
    std::vector<double> sum_sq(k, 0.0);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t chosen = rng.categorical(policy.probs());
        const Policy next = cl_update(policy, chosen, gain * payoffs[chosen]);
        for (std::size_t a = 0; a < k; ++a) {
            const double delta = next[a] - policy[a];
            sum[a] += delta;
            sum_sq[a] += delta * delta;
        }
    }
    DriftEstimate estimate{std::vector<double>(k), std::vector<double>(k)};
    const auto n = static_cast<double>(samples);
    for (std::size_t a = 0; a < k; ++a) {
        const double mean = sum[a] / n;
        const double variance = std::max(0.0, (sum_sq[a] - n * mean * mean) / (n - 1.0));
        estimate.mean[a] = mean;
        estimate.standard_error[a] = std::sqrt(variance / n);
    }
    return estimate;
}

double verify_equivalence(std::span<const double> attractivenesses, double rho, double q_deposit, std::size_t steps,
                          std::uint64_t seed, EquivalenceFault fault) {
    if (attractivenesses.size() < 2) {
        throw std::domain_error("equivalence check needs at least two patches");
    }
    if (steps == 0) {
        throw std::domain_error("equivalence check needs at least one step");
    }
    PheromoneField field(attractivenesses.size(), rho, q_deposit);
    Policy explicit_path = choice_distribution(field, attractivenesses);
    Policy learned_path = explicit_path;
    RngStream rng = RngStream::derive(seed, {kChoiceStream});

    double max_deviation = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
        const std::size_t chosen = rng.categorical(explicit_path.probs());
        const PheromoneField next = field.step(chosen);

        double gain = 0.0;
        if (fault == EquivalenceFault::late_evaporation) {
            std::vector<double> evaporated(field.tau().begin(), field.tau().end());
            for (double& t_j : evaporated) {
                t_j *= rho;
            }
            gain = stigmergic_gain(attractivenesses, evaporated, rho, q_deposit, chosen);
        } else {
            gain = stigmergic_gain(attractivenesses, field.tau(), rho, q_deposit, chosen);
        }

        field = next;
        explicit_path = choice_distribution(field, attractivenesses);
        learned_path.reinforce(chosen, gain);

        for (std::size_t i = 0; i < explicit_path.size(); ++i) {
            max_deviation = std::max(max_deviation, std::abs(explicit_path[i] - learned_path[i]));
        }
    }
    return max_deviation;
}

EquivalenceSuiteResult run_equivalence_suite(std::size_t configurations, std::size_t steps,
                                             std::uint64_t master_seed, EquivalenceFault fault) {
    if (configurations == 0) {
        throw std::domain_error("equivalence suite needs at least one configuration");
    }
    EquivalenceSuiteResult result;
    result.configurations = configurations;
    for (std::size_t c = 0; c < configurations; ++c) {
        RngStream rng = RngStream::derive(master_seed, {kSuiteStream, c});
        const std::size_t patches = 2 + static_cast<std::size_t>(rng.below(4));
        std::vector<double> attractivenesses(patches);
        for (double& a : attractivenesses) {
            a = 10.0 * (1.0 - rng.uniform());
        }
        const double rho = rng.uniform();
        const double q_deposit = 0.1 * (1.0 - rng.uniform());
        const double deviation =
            verify_equivalence(attractivenesses, rho, q_deposit, steps, rng.next_u64(), fault);
        if (deviation > result.max_deviation || c == 0) {
            result.max_deviation = deviation;
            result.worst_configuration = c;
        }
    }
    return result;
}

}  // namespace stigmergy
