#include "stigmergy/foraging_model.hpp"

#include <cmath>
#include <stdexcept>

namespace stigmergy {

SigmoidParams::SigmoidParams(double dynamic_range, double steepness, double density_attract)
    : dynamic_range_(dynamic_range), steepness_(steepness), density_attract_(density_attract) {
    if (!(dynamic_range > 1.0) || !std::isfinite(dynamic_range)) {
        throw std::domain_error("sigmoid dynamic range H must be > 1");
    }
    if (!(steepness > 0.0) || !std::isfinite(steepness)) {
        throw std::domain_error("sigmoid steepness k must be > 0");
    }
    if (!(density_attract > 0.0) || !std::isfinite(density_attract)) {
        throw std::domain_error("sigmoid D_attract must be > 0");
    }
}

double attractiveness(const SigmoidParams& params, double density) {
    if (!(density >= 0.0)) {
        throw std::domain_error("bacterial density must be >= 0");
    }
    const double h = params.dynamic_range();
    double term = 0.0;
    if (density > 0.0) {
        term = 4.0 * std::exp(params.steepness() * std::log(density / params.density_attract()));
    }
    if (std::isinf(term)) {
        return std::sqrt(h);
    }
    return std::sqrt(h) * (1.0 + term) / (h + term);
}

PatchSpec::PatchSpec(double density, const SigmoidParams& params)
    : density_(density), cached_attractiveness_(stigmergy::attractiveness(params, density)) {}

void PatchSpec::set_density(double density, const SigmoidParams& params) {
    cached_attractiveness_ = stigmergy::attractiveness(params, density);
    density_ = density;
}

void PatchSpec::set_params(const SigmoidParams& params) {
    cached_attractiveness_ = stigmergy::attractiveness(params, density_);
}

Policy ifd_distribution(std::span<const double> attractivenesses) {
    if (attractivenesses.empty()) {
        throw std::domain_error("ifd_distribution needs at least one patch");
    }
    for (double a : attractivenesses) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw std::domain_error("attractiveness must be positive and finite");
        }
    }
    return Policy::from_weights(attractivenesses);
}

}  // namespace stigmergy
