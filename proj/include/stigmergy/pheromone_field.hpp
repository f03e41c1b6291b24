#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stigmergy/policy.hpp"

namespace stigmergy {

/// Per-patch pheromone quantities with evaporation and deposit.
///
/// The pheromone attractiveness of a patch is its raw quantity (B_i = tau_i).
/// Every patch starts at tau = 1. Evaporation is applied literally, so with
/// rho < 1 a patch that is not visited can fall below 1.
class PheromoneField {
public:
    /// rho is the fraction retained per step, in [0, 1]; q_deposit >= 0.
    PheromoneField(std::size_t num_patches, double rho, double q_deposit);
    /// Explicit initial quantities, each >= 0.
    PheromoneField(std::vector<double> tau, double rho, double q_deposit);

    std::size_t size() const noexcept { return tau_.size(); }
    std::span<const double> tau() const noexcept { return tau_; }
    double rho() const noexcept { return rho_; }
    double q_deposit() const noexcept { return q_deposit_; }

    /// tau_i' = rho * tau_i, plus q_deposit on the chosen patch.
    PheromoneField step(std::size_t chosen) const;
    void step_in_place(std::size_t chosen);

private:
    std::vector<double> tau_;
    double rho_;
    double q_deposit_;
};

/// P_i = tau_i A_i / sum_j tau_j A_j. Throws degenerate_state_error when the
/// weighted sum is zero.
Policy choice_distribution(const PheromoneField& field, std::span<const double> attractivenesses);

}  // namespace stigmergy
