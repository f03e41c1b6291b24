#include "stigmergy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <tuple>

#include "json.hpp"
#include "parallel.hpp"
#include "stigmergy/errors.hpp"
#include "stigmergy/table_io.hpp"

namespace stigmergy {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kBootstrapStream = 0x626f6f74ULL;  // "boot"
constexpr std::uint64_t kDriftStream = 0x6472696674ULL;    // "drift"

fs::path prepare_output(const ExperimentConfig& config) {
    const fs::path dir(config.general.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw io_error("cannot create output directory " + dir.string());
    }
    write_text_file(dir / "config.json", to_json_text(config));
    return dir;
}

void write_json(const fs::path& path, const json& value) { write_text_file(path, value.dump(2) + "\n"); }

SimConfig sweep_cell_config(const ExperimentConfig& config, std::size_t memory, std::int64_t delta,
                            double epsilon) {
    ExperimentConfig cell = config;
    cell.adapt.memory = memory;
    cell.adapt.delta = delta;
    cell.adapt.epsilon = epsilon;
    cell.adapt.epochs = config.sweep.epochs;
    return make_adapt_config(cell);
}

}  // namespace

ValidationResult run_validation(const ExperimentConfig& config) {
    const auto& section = config.validate;
    const auto& scenario = section.scenario;
    const SigmoidParams sigmoid = section.sigmoid();

    ValidationResult result;
    for (std::size_t i = 0; i < scenario.densities.size(); ++i) {
        result.arm_names.push_back("patch_" + std::to_string(i + 1));
    }
    if (scenario.include_outside) {
        result.arm_names.emplace_back("outside");
    }
    result.attractiveness = scenario_attractiveness(scenario, sigmoid);
    result.ifd_reference = ifd_distribution(result.attractiveness);
    result.seconds_per_epoch = section.effective_seconds_per_epoch();

    const SimConfig sim = make_static_config(scenario, sigmoid, section.q_deposit, config.general.seed);
    const auto traces = run_ensemble(sim, config.general.runs, config.general.threads);
    result.mean_occupancy = mean_trajectory(traces);

    if (traces.size() >= 2) {
        for (std::size_t arm = 0; arm < scenario.num_arms(); ++arm) {
            RngStream rng = RngStream::derive(config.general.seed, {kBootstrapStream, arm});
            result.bands.push_back(
                bootstrap_ci(arm_samples(traces, arm), section.confidence, section.bootstrap_resamples, rng));
        }
    }

    const auto terminal = result.mean_occupancy.row(result.mean_occupancy.rows() - 1);
    for (std::size_t a = 0; a < terminal.size(); ++a) {
        result.l1_to_ifd += std::abs(terminal[a] - result.ifd_reference[a]);
    }
    return result;
}

AdaptResult run_adaptation(const ExperimentConfig& config) {
    const SimConfig sim = make_adapt_config(config);
    AdaptResult result;
    result.traces = run_ensemble(sim, config.general.runs, config.general.threads);
    result.summary = mta(result.traces, static_cast<std::size_t>(config.adapt.delta), config.adapt.target_arm,
                         config.adapt.threshold, config.adapt.epochs);
    return result;
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& config) {
    std::vector<std::tuple<std::size_t, std::int64_t, double>> keys;
    for (auto m : config.sweep.memory) {
        for (auto d : config.sweep.delta) {
            for (auto e : config.sweep.epsilon) {
                keys.emplace_back(m, d, e);
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<SweepCell> cells(keys.size());
    detail::parallel_for(keys.size(), config.general.threads, [&](std::size_t i) {
        const auto [memory, delta, epsilon] = keys[i];
        const SimConfig sim = sweep_cell_config(config, memory, delta, epsilon);
        const auto traces = run_ensemble(sim, config.sweep.runs_per_cell, 1);
        cells[i] = SweepCell{memory, delta, epsilon,
                             mta(traces, static_cast<std::size_t>(delta), config.adapt.target_arm,
                                 config.adapt.threshold, config.sweep.epochs)};
    });
    return cells;
}

VerifyReport run_verification(const ExperimentConfig& config) {
    const auto& v = config.verify;
    VerifyReport report;
    const auto fault = v.inject_fault ? EquivalenceFault::late_evaporation : EquivalenceFault::none;
    report.equivalence = run_equivalence_suite(v.configurations, v.steps, config.general.seed, fault);
    report.equivalence_ok = report.equivalence.max_deviation <= v.tolerance;

    const Policy policy(v.drift_policy);
    RngStream rng = RngStream::derive(config.general.seed, {kDriftStream});
    report.drift = estimate_one_step_drift(policy, v.drift_payoffs, v.drift_gain, v.drift_samples, rng);
    report.analytic_drift = replicator_rhs(policy, v.drift_payoffs);
    report.drift_ok = true;
    for (std::size_t a = 0; a < policy.size(); ++a) {
        report.analytic_drift[a] *= v.drift_gain;
        const double gap = std::abs(report.drift.mean[a] - report.analytic_drift[a]);
        const double se = report.drift.standard_error[a];
        const double z = se > 0.0 ? gap / se : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        report.max_drift_z = std::max(report.max_drift_z, z);
    }
    report.drift_ok = report.max_drift_z <= 3.0;
    return report;
}

Matrix load_fit_target(const fs::path& path) {
    const NumericTable table = read_numeric_csv(path);
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (table.columns[c] != "epoch" && table.columns[c] != "seconds") {
            keep.push_back(c);
        }
    }
    Matrix target(table.values.rows(), keep.size());
    for (std::size_t r = 0; r < target.rows(); ++r) {
        for (std::size_t c = 0; c < keep.size(); ++c) {
            target(r, c) = table.values(r, keep[c]);
        }
    }
    return target;
}

FitSpec make_fit_spec(const ExperimentConfig& config, Matrix target) {
    const auto& f = config.fit;
    FitSpec spec;
    spec.bounds = f.bounds;
    spec.scenario = config.validate.scenario;
    spec.runs_per_evaluation = f.runs_per_evaluation;
    spec.simulation_seed = f.simulation_seed;
    spec.de.population = f.population;
    spec.de.differential_weight = f.differential_weight;
    spec.de.crossover_rate = f.crossover_rate;
    spec.de.max_generations = f.generations;
    spec.de.convergence_tol = f.convergence_tol;
    spec.de.seed = config.general.seed;
    spec.de.threads = config.general.threads;
    if (target.rows() != spec.scenario.epochs + 1 || target.cols() != spec.scenario.num_arms()) {
        throw config_error("target trajectory is " + std::to_string(target.rows()) + "x" +
                           std::to_string(target.cols()) + " but the simulation produces " +
                           std::to_string(spec.scenario.epochs + 1) + "x" +
                           std::to_string(spec.scenario.num_arms()));
    }
    spec.target = std::move(target);
    return spec;
}

int cmd_validate(const ExperimentConfig& config, std::ostream& log) {
    config.check();
    const ValidationResult result = run_validation(config);
    const fs::path dir = prepare_output(config);

    Table occupancy;
    occupancy.columns = {"epoch", "seconds"};
    occupancy.columns.insert(occupancy.columns.end(), result.arm_names.begin(), result.arm_names.end());
    for (std::size_t t = 0; t < result.mean_occupancy.rows(); ++t) {
        std::vector<Cell> row{static_cast<std::uint64_t>(t), static_cast<double>(t) * result.seconds_per_epoch};
        for (double p : result.mean_occupancy.row(t)) {
            row.emplace_back(p);
        }
        occupancy.add_row(std::move(row));
    }
    write_table(occupancy, dir / "occupancy", config.general.format);

    if (!result.bands.empty()) {
        Table ci;
        ci.columns = {"epoch", "seconds"};
        for (const auto& name : result.arm_names) {
            ci.columns.push_back(name + "_lower");
            ci.columns.push_back(name + "_upper");
        }
        for (std::size_t t = 0; t < result.mean_occupancy.rows(); ++t) {
            std::vector<Cell> row{static_cast<std::uint64_t>(t), static_cast<double>(t) * result.seconds_per_epoch};
            for (const auto& band : result.bands) {
                row.emplace_back(band.lower[t]);
                row.emplace_back(band.upper[t]);
            }
            ci.add_row(std::move(row));
        }
        write_table(ci, dir / "occupancy_ci", config.general.format);
    }

    const auto terminal = result.mean_occupancy.row(result.mean_occupancy.rows() - 1);
    json summary{
        {"experiment", "validate"},
        {"runs", config.general.runs},
        {"epochs", config.validate.scenario.epochs},
        {"seconds_per_epoch", result.seconds_per_epoch},
        {"arms", result.arm_names},
        {"attractiveness", result.attractiveness},
        {"ifd_reference", result.ifd_reference.values()},
        {"terminal_proportions", std::vector<double>(terminal.begin(), terminal.end())},
        {"l1_to_ifd", result.l1_to_ifd},
        {"confidence", config.validate.confidence},
        {"has_ci", !result.bands.empty()},
    };
    write_json(dir / "summary.json", summary);
    log << "validate: " << config.general.runs << " runs, terminal L1 distance to IFD "
        << format_double(result.l1_to_ifd) << "\n";
    return exit_codes::ok;
}

int cmd_adapt(const ExperimentConfig& config, std::ostream& log) {
    config.check();
    const AdaptResult result = run_adaptation(config);
    const fs::path dir = prepare_output(config);

    Table trajectories;
    trajectories.columns = {"run", "epoch", "arm", "probability"};
    for (std::size_t r = 0; r < result.traces.size(); ++r) {
        const Matrix& history = result.traces[r].policy_history;
        for (std::size_t t = 0; t < history.rows(); ++t) {
            for (std::size_t a = 0; a < history.cols(); ++a) {
                trajectories.rows.push_back({static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(t),
                                             static_cast<std::uint64_t>(a), history(t, a)});
            }
        }
    }
    write_table(trajectories, dir / "trajectories", config.general.format);

    Table per_run;
    per_run.columns = {"run", "run_seed", "k", "success"};
    for (std::size_t r = 0; r < result.traces.size(); ++r) {
        const auto k = result.summary.per_run_k[r];
        per_run.add_row({static_cast<std::uint64_t>(r), result.traces[r].run_seed, static_cast<std::uint64_t>(k),
                         static_cast<std::uint64_t>(k < config.adapt.epochs ? 1 : 0)});
    }
    write_table(per_run, dir / "per_run", config.general.format);

    json summary{
        {"experiment", "adapt"},
        {"runs", config.general.runs},
        {"epochs", config.adapt.epochs},
        {"switch_epoch", config.adapt.delta},
        {"epsilon", config.adapt.epsilon},
        {"memory", config.adapt.memory},
        {"target_arm", config.adapt.target_arm},
        {"threshold", config.adapt.threshold},
        {"mta", result.summary.mta},
        {"success_rate", result.summary.success_rate},
    };
    write_json(dir / "summary.json", summary);
    log << "adapt: success_rate " << format_double(result.summary.success_rate) << ", mta "
        << format_double(result.summary.mta) << "\n";
    return exit_codes::ok;
}

int cmd_sweep(const ExperimentConfig& config, std::ostream& log) {
    config.check();
    const auto cells = run_sweep(config);
    const fs::path dir = prepare_output(config);

    Table table;
    table.columns = {"memory", "delta", "epsilon", "mta", "success_rate"};
    for (const auto& cell : cells) {
        table.add_row({static_cast<std::uint64_t>(cell.memory), cell.delta, cell.epsilon, cell.summary.mta,
                       cell.summary.success_rate});
    }
    write_table(table, dir / "sweep", config.general.format);

    json summary{
        {"experiment", "sweep"},
        {"cells", cells.size()},
        {"runs_per_cell", config.sweep.runs_per_cell},
        {"epochs", config.sweep.epochs},
    };
    write_json(dir / "summary.json", summary);
    log << "sweep: " << cells.size() << " cells written\n";
    return exit_codes::ok;
}

int cmd_verify(const ExperimentConfig& config, std::ostream& log) {
    config.check();
    const VerifyReport report = run_verification(config);
    log << "equivalence: " << report.equivalence.configurations << " configurations x " << config.verify.steps
        << " steps, max deviation " << format_double(report.equivalence.max_deviation) << " (tolerance "
        << format_double(config.verify.tolerance) << ") " << (report.equivalence_ok ? "PASS" : "FAIL") << "\n";
    log << "replicator drift: " << config.verify.drift_samples << " samples, max z "
        << format_double(report.max_drift_z) << " (limit 3) " << (report.drift_ok ? "PASS" : "FAIL") << "\n";

    if (!config.general.out_dir.empty()) {
        const fs::path dir = prepare_output(config);
        json summary{
            {"experiment", "verify"},
            {"configurations", report.equivalence.configurations},
            {"steps", config.verify.steps},
            {"max_deviation", report.equivalence.max_deviation},
            {"worst_configuration", report.equivalence.worst_configuration},
            {"tolerance", config.verify.tolerance},
            {"drift_empirical", report.drift.mean},
            {"drift_standard_error", report.drift.standard_error},
            {"drift_analytic", report.analytic_drift},
            {"max_drift_z", report.max_drift_z},
            {"passed", report.passed()},
        };
        write_json(dir / "summary.json", summary);
    }
    return report.passed() ? exit_codes::ok : exit_codes::verification_failed;
}

int cmd_fit(const ExperimentConfig& config, std::ostream& log) {
    config.check();
    FitSpec spec = make_fit_spec(config, load_fit_target(config.fit.target_path));
    const FitResult fit = fit_de(spec);
    const fs::path dir = prepare_output(config);

    Table history;
    history.columns = {"generation", "best_fitness"};
    for (std::size_t g = 0; g < fit.history.size(); ++g) {
        history.add_row({static_cast<std::uint64_t>(g), fit.history[g]});
    }
    write_table(history, dir / "fit_history", config.general.format);

    json summary{
        {"experiment", "fit"},
        {"dynamic_range", fit.sigmoid.dynamic_range()},
        {"steepness", fit.sigmoid.steepness()},
        {"density_attract", fit.sigmoid.density_attract()},
        {"q_deposit", fit.q_deposit},
        {"best_fitness", fit.best_fitness},
        {"generations", fit.generations},
        {"evaluations", fit.evaluations},
    };
    write_json(dir / "fit.json", summary);
    log << "fit: H " << format_double(fit.sigmoid.dynamic_range()) << ", k " << format_double(fit.sigmoid.steepness())
        << ", D_attract " << format_double(fit.sigmoid.density_attract()) << ", Q " << format_double(fit.q_deposit)
        << ", fitness " << format_double(fit.best_fitness) << "\n";
    return exit_codes::ok;
}

int run_command(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
    try {
        switch (config.general.kind) {
            case ExperimentKind::validate: return cmd_validate(config, log);
            case ExperimentKind::adapt: return cmd_adapt(config, log);
            case ExperimentKind::sweep: return cmd_sweep(config, log);
            case ExperimentKind::verify: return cmd_verify(config, log);
            case ExperimentKind::fit: return cmd_fit(config, log);
        }
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_codes::io;
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_codes::usage;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_codes::usage;
    } catch (const degenerate_state_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_codes::usage;
    }
    return exit_codes::usage;
}

}  // namespace stigmergy
