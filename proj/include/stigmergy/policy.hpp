#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stigmergy {

/// A point on the probability simplex: action-selection probabilities for a
/// learner, and equally the fraction of the swarm found at each patch.
class Policy {
public:
    /// Tolerance on the sum of a caller-supplied vector.
    static constexpr double kInputTolerance = 1e-9;
    /// Deviation of the sum from 1 above which the guard renormalizes.
    static constexpr double kGuardThreshold = 1e-15;

    /// Validates entries (finite, in [0, 1]) and the sum, then applies the guard.
    explicit Policy(std::vector<double> probs);

    /// Normalizes non-negative weights with a positive total.
    static Policy from_weights(std::span<const double> weights);

    static Policy uniform(std::size_t num_arms);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const noexcept { return probs_; }
    const std::vector<double>& values() const noexcept { return probs_; }

    /// In-place cross-learning step: the chosen arm gains reward * (1 - p),
    /// every other arm loses reward * p. The reward must lie in [0, 1].
    void reinforce(std::size_t chosen, double effective_reward);

    bool operator==(const Policy&) const = default;

private:
    Policy() = default;
    void renormalize_if_drifted() noexcept;

    std::vector<double> probs_;
};

/// |sum - 1| of a probability vector.
double simplex_deviation(std::span<const double> probs) noexcept;

}  // namespace stigmergy
