#pragma once

#include <span>

#include "stigmergy/policy.hpp"

namespace stigmergy {

/// Sigmoid describing how bacterial density drives patch attractiveness.
class SigmoidParams {
public:
    /// Values fitted for E. coli OP50.
    static constexpr double kDefaultDynamicRange = 51.5;
    static constexpr double kDefaultSteepness = 0.29;
    static constexpr double kDefaultDensityAttract = 0.003;

    SigmoidParams() = default;
    /// Throws std::domain_error unless dynamic_range > 1, steepness > 0 and
    /// density_attract > 0.
    SigmoidParams(double dynamic_range, double steepness, double density_attract);

    /// H: ratio between the saturated and the zero-density attractiveness.
    double dynamic_range() const noexcept { return dynamic_range_; }
    /// k
    double steepness() const noexcept { return steepness_; }
    /// D_attract, in OD units.
    double density_attract() const noexcept { return density_attract_; }

    bool operator==(const SigmoidParams&) const = default;

private:
    double dynamic_range_ = kDefaultDynamicRange;
    double steepness_ = kDefaultSteepness;
    double density_attract_ = kDefaultDensityAttract;
};

/// sqrt(H) * (1 + 4 x^k) / (H + 4 x^k) with x = density / D_attract.
/// Ranges over [sqrt(H)/H, sqrt(H)); density 0 gives the floor exactly.
double attractiveness(const SigmoidParams& params, double density);

/// A food patch and its attractiveness, kept in sync with the sigmoid.
class PatchSpec {
public:
    PatchSpec(double density, const SigmoidParams& params);

    double density() const noexcept { return density_; }
    double attractiveness() const noexcept { return cached_attractiveness_; }

    void set_density(double density, const SigmoidParams& params);
    void set_params(const SigmoidParams& params);

private:
    double density_;
    double cached_attractiveness_;
};

/// Ideal free distribution: P_i = A_i / sum_j A_j. Entries must be positive.
Policy ifd_distribution(std::span<const double> attractivenesses);

}  // namespace stigmergy
