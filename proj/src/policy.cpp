#include "stigmergy/policy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stigmergy/errors.hpp"

namespace stigmergy {

Policy::Policy(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::domain_error("policy needs at least one arm");
    }
    for (double p : probs_) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw std::domain_error("policy entry outside [0, 1]: " + std::to_string(p));
        }
    }
    if (simplex_deviation(probs_) > kInputTolerance) {
        throw std::domain_error("policy entries do not sum to 1");
    }
    renormalize_if_drifted();
}

Policy Policy::from_weights(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::domain_error("empty weight vector");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::domain_error("weights must be finite and non-negative");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw degenerate_state_error("all weights are zero");
    }
    Policy policy;
    policy.probs_.reserve(weights.size());
    for (double w : weights) {
        policy.probs_.push_back(w / total);
    }
    policy.renormalize_if_drifted();
    return policy;
}

Policy Policy::uniform(std::size_t num_arms) {
    if (num_arms == 0) {
        throw std::domain_error("policy needs at least one arm");
    }
    Policy policy;
    policy.probs_.assign(num_arms, 1.0 / static_cast<double>(num_arms));
    policy.renormalize_if_drifted();
    return policy;
}

void Policy::reinforce(std::size_t chosen, double effective_reward) {
    if (chosen >= probs_.size()) {
        throw std::out_of_range("chosen arm out of range");
    }
    if (!(effective_reward >= 0.0 && effective_reward <= 1.0)) {
        throw std::domain_error("effective reward outside [0, 1]: " + std::to_string(effective_reward));
    }
    if (effective_reward == 0.0) {
        return;
    }
    const double keep = 1.0 - effective_reward;
    for (std::size_t a = 0; a < probs_.size(); ++a) {
        if (a == chosen) {
            probs_[a] += effective_reward * (1.0 - probs_[a]);
        } else {
            probs_[a] *= keep;
        }
    }
    renormalize_if_drifted();
}

void Policy::renormalize_if_drifted() noexcept {
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > kGuardThreshold) {
        for (double& p : probs_) {
            p /= total;
        }
    }
}

double simplex_deviation(std::span<const double> probs) noexcept {
    return std::abs(std::accumulate(probs.begin(), probs.end(), 0.0) - 1.0);
}

}  // namespace stigmergy
