#include "stigmergy/pheromone_field.hpp"

#include <cmath>
#include <stdexcept>

#include "stigmergy/errors.hpp"

namespace stigmergy {

namespace {

void check_rates(double rho, double q_deposit) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::domain_error("evaporation factor rho must lie in [0, 1]");
    }
    if (!(q_deposit >= 0.0) || !std::isfinite(q_deposit)) {
        throw std::domain_error("deposit quantum Q must be >= 0");
    }
}

}  // namespace

PheromoneField::PheromoneField(std::size_t num_patches, double rho, double q_deposit)
    : tau_(num_patches, 1.0), rho_(rho), q_deposit_(q_deposit) {
    if (num_patches == 0) {
        throw std::domain_error("pheromone field needs at least one patch");
    }
    check_rates(rho, q_deposit);
}

PheromoneField::PheromoneField(std::vector<double> tau, double rho, double q_deposit)
    : tau_(std::move(tau)), rho_(rho), q_deposit_(q_deposit) {
    if (tau_.empty()) {
        throw std::domain_error("pheromone field needs at least one patch");
    }
    for (double t : tau_) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw std::domain_error("pheromone quantities must be finite and >= 0");
        }
    }
    check_rates(rho, q_deposit);
}

PheromoneField PheromoneField::step(std::size_t chosen) const {
    PheromoneField next = *this;
    next.step_in_place(chosen);
    return next;
}

void PheromoneField::step_in_place(std::size_t chosen) {
    if (chosen >= tau_.size()) {
        throw std::out_of_range("chosen patch out of range");
    }
    for (double& t : tau_) {
        t *= rho_;
    }
    tau_[chosen] += q_deposit_;
}

Policy choice_distribution(const PheromoneField& field, std::span<const double> attractivenesses) {
    if (attractivenesses.size() != field.size()) {
        throw std::invalid_argument("attractiveness vector length does not match the field");
    }
    std::vector<double> weights(field.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(attractivenesses[i] >= 0.0) || !std::isfinite(attractivenesses[i])) {
            throw std::domain_error("attractiveness must be finite and >= 0");
        }
        weights[i] = field.tau()[i] * attractivenesses[i];
        total += weights[i];
    }
    if (!(total > 0.0)) {
        throw degenerate_state_error("pheromone-weighted attractiveness sums to zero");
    }
    return Policy::from_weights(weights);
}

}  // namespace stigmergy
