#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stigmergy/fitting.hpp"
#include "stigmergy/swarm_sim.hpp"

namespace stigmergy {

/// Malformed or inconsistent experiment configuration (exit code 1).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output (exit code 3).
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { validate, adapt, sweep, verify, fit };
enum class TableFormat { csv, json };

std::string_view to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(std::string_view text);
std::string_view to_string(TableFormat format) noexcept;
TableFormat parse_table_format(std::string_view text);

struct GeneralSection {
    ExperimentKind kind = ExperimentKind::adapt;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    /// Runs per ensemble for validate and adapt.
    std::size_t runs = 100;
    TableFormat format = TableFormat::csv;
    /// 0 = all cores.
    std::size_t threads = 0;

    bool operator==(const GeneralSection&) const = default;
};

/// Two-state bandit run (adapt) and the shared dynamics of sweep cells.
struct AdaptSection {
    std::size_t epochs = 500;
    std::size_t batch_size = 100;
    std::size_t memory = 350;
    double q_deposit = 0.02;
    double noise_std = 0.1;
    double epsilon = 0.0;
    std::int64_t delta = 100;
    std::vector<double> base_rewards{0.0, 2.73, 0.0};
    std::vector<double> switched_rewards{0.0, 0.0, 2.73};
    std::size_t target_arm = 2;
    double threshold = 0.9;

    bool operator==(const AdaptSection&) const = default;
};

struct ValidateSection {
    StaticScenario scenario;
    double q_deposit = 0.02;
    double dynamic_range = SigmoidParams::kDefaultDynamicRange;
    double steepness = SigmoidParams::kDefaultSteepness;
    double density_attract = SigmoidParams::kDefaultDensityAttract;
    /// 0 means "spread 7200 s over the configured epochs". Labels only.
    double seconds_per_epoch = 0.0;
    std::size_t bootstrap_resamples = 1000;
    double confidence = 0.95;

    SigmoidParams sigmoid() const;
    double effective_seconds_per_epoch() const noexcept;
    bool operator==(const ValidateSection&) const = default;
};

struct SweepSection {
    std::vector<std::size_t> memory{100, 800};
    std::vector<std::int64_t> delta{50, 100, 150, 200, 300};
    std::vector<double> epsilon{0.001, 0.01, 0.05, 0.1, 0.2};
    std::size_t runs_per_cell = 5;
    std::size_t epochs = 1000;

    bool operator==(const SweepSection&) const = default;
};

struct VerifySection {
    std::size_t configurations = 1000;
    std::size_t steps = 200;
    double tolerance = 1e-12;
    std::size_t drift_samples = 100000;
    double drift_gain = 0.05;
    std::vector<double> drift_policy{0.3, 0.7};
    std::vector<double> drift_payoffs{1.0, 0.4};
    /// Negative control: corrupts the verifier so that it must fail.
    bool inject_fault = false;

    bool operator==(const VerifySection&) const = default;
};

struct FitSection {
    std::string target_path;
    std::array<Bounds, kFitDimension> bounds = FitSpec{}.bounds;
    std::size_t population = 0;
    double differential_weight = 0.8;
    double crossover_rate = 0.9;
    std::size_t generations = 200;
    double convergence_tol = 1e-12;
    std::size_t runs_per_evaluation = 4;
    std::uint64_t simulation_seed = 0;

    bool operator==(const FitSection&) const = default;
};

/// Everything an invocation needs. Round-trips losslessly through JSON.
struct ExperimentConfig {
    GeneralSection general;
    AdaptSection adapt;
    ValidateSection validate;
    SweepSection sweep;
    VerifySection verify;
    FitSection fit;

    /// Throws config_error on inconsistent settings for the selected kind.
    void check() const;
    bool operator==(const ExperimentConfig&) const = default;
};

std::string to_json_text(const ExperimentConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json_text(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// SimConfig for the adapt recipe (and, with overrides, for one sweep cell).
SimConfig make_adapt_config(const ExperimentConfig& config);

}  // namespace stigmergy
