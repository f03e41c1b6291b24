#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stigmergy/matrix.hpp"
#include "stigmergy/rng.hpp"
#include "stigmergy/swarm_sim.hpp"

namespace stigmergy {

/// Mean Time to Adapt over an ensemble.
struct AdaptationSummary {
    /// Mean of per_run_k.
    double mta = 0.0;
    /// Fraction of runs with k < horizon.
    double success_rate = 0.0;
    /// First offset k >= 0 after the switch with pi_target(switch + k) >= threshold;
    /// the horizon when that never happens.
    std::vector<std::size_t> per_run_k;
};

/// Offset of the first epoch at or after `delta` where the target arm reaches
/// `threshold`, or `horizon` if it never does.
std::size_t adaptation_offset(const RunTrace& trace, std::size_t delta, std::size_t target_arm, double threshold,
                              std::size_t horizon);

AdaptationSummary mta(std::span<const RunTrace> traces, std::size_t delta, std::size_t target_arm,
                      double threshold, std::size_t horizon);

/// Sum of squared differences. This is the fitting criterion (labelled MSE
/// by convention, although it is not divided by the point count).
double mse(const Matrix& predicted, const Matrix& target);
/// mse() divided by the number of points.
double mean_squared_error(const Matrix& predicted, const Matrix& target);

/// Pointwise mean over a set of equally shaped trajectories.
Matrix mean_trajectory(std::span<const RunTrace> traces);

struct BootstrapBand {
    std::vector<double> lower;
    std::vector<double> mean;
    std::vector<double> upper;
};

/// Percentile bootstrap of the mean across runs (rows of `samples`), per time
/// point (columns). Bounds use linear interpolation between order statistics
/// and are widened if needed so that lower <= mean <= upper.
BootstrapBand bootstrap_ci(const Matrix& samples, double confidence, std::size_t resamples, RngStream& rng);

/// Column `arm` of every trace stacked into a runs x (epochs + 1) matrix.
Matrix arm_samples(std::span<const RunTrace> traces, std::size_t arm);

}  // namespace stigmergy
