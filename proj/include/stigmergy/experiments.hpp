#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stigmergy/cross_learning.hpp"
#include "stigmergy/experiment_config.hpp"
#include "stigmergy/fitting.hpp"
#include "stigmergy/metrics.hpp"
#include "stigmergy/swarm_sim.hpp"

namespace stigmergy {

namespace exit_codes {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int verification_failed = 2;
inline constexpr int io = 3;
}  // namespace exit_codes

struct ValidationResult {
    std::vector<std::string> arm_names;
    std::vector<double> attractiveness;
    Policy ifd_reference = Policy::uniform(1);
    Matrix mean_occupancy;
    /// One band per arm; empty with fewer than two runs.
    std::vector<BootstrapBand> bands;
    double l1_to_ifd = 0.0;
    double seconds_per_epoch = 0.0;
};

ValidationResult run_validation(const ExperimentConfig& config);

struct AdaptResult {
    std::vector<RunTrace> traces;
    AdaptationSummary summary;
};

AdaptResult run_adaptation(const ExperimentConfig& config);

struct SweepCell {
    std::size_t memory = 0;
    std::int64_t delta = 0;
    double epsilon = 0.0;
    AdaptationSummary summary;
};

/// Every (memory, delta, epsilon) cell, sorted ascending in that key order.
/// All cells share the master seed.
std::vector<SweepCell> run_sweep(const ExperimentConfig& config);

struct VerifyReport {
    EquivalenceSuiteResult equivalence;
    DriftEstimate drift;
    std::vector<double> analytic_drift;
    /// Largest |empirical - analytic| / standard error.
    double max_drift_z = 0.0;
    bool equivalence_ok = false;
    bool drift_ok = false;

    bool passed() const noexcept { return equivalence_ok && drift_ok; }
};

VerifyReport run_verification(const ExperimentConfig& config);

/// Target trajectory from a CSV in the validate occupancy layout; the
/// "epoch" and "seconds" columns are dropped if present.
Matrix load_fit_target(const std::filesystem::path& path);
FitSpec make_fit_spec(const ExperimentConfig& config, Matrix target);

/// Each command writes config.json plus its outputs into general.out_dir and
/// returns an exit code. Errors are thrown as config_error / io_error.
int cmd_validate(const ExperimentConfig& config, std::ostream& log);
int cmd_adapt(const ExperimentConfig& config, std::ostream& log);
int cmd_sweep(const ExperimentConfig& config, std::ostream& log);
int cmd_verify(const ExperimentConfig& config, std::ostream& log);
int cmd_fit(const ExperimentConfig& config, std::ostream& log);

/// Dispatches on general.kind and maps exceptions to exit codes.
int run_command(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

}  // namespace stigmergy
