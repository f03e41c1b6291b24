#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "stigmergy/experiments.hpp"

namespace {

using namespace stigmergy;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> runs;
    std::optional<std::string> format;
    std::optional<std::size_t> threads;

    std::optional<std::size_t> epochs;
    std::optional<double> epsilon;
    std::optional<std::size_t> memory;
    std::optional<std::int64_t> delta;
    std::optional<double> q;
    std::optional<double> noise;
    std::optional<std::size_t> batch;

    std::optional<std::string> target;
    std::optional<std::size_t> generations;
    std::optional<std::size_t> configurations;
    std::optional<std::size_t> steps;
    bool inject_fault = false;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("-c,--config", o.config_path, "JSON configuration file");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("-o,--out", o.out, "output directory");
    sub->add_option("--format", o.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "worker threads, 0 = all cores");
}

void add_dynamics(CLI::App* sub, Overrides& o) {
    sub->add_option("--epochs", o.epochs, "epochs per run");
    sub->add_option("--epsilon", o.epsilon, "explorer fraction");
    sub->add_option("--memory", o.memory, "deposit memory capacity");
    sub->add_option("--q", o.q, "deposit constant");
    sub->add_option("--batch", o.batch, "decisions per epoch");
}

ExperimentConfig build_config(ExperimentKind kind, const Overrides& o) {
    ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
    c.general.kind = kind;
    if (o.seed) c.general.seed = *o.seed;
    if (o.out) c.general.out_dir = *o.out;
    if (o.format) c.general.format = parse_table_format(*o.format);
    if (o.threads) c.general.threads = *o.threads;

    switch (kind) {
        case ExperimentKind::validate:
            if (o.runs) c.general.runs = *o.runs;
            if (o.epochs) c.validate.scenario.epochs = *o.epochs;
            if (o.epsilon) c.validate.scenario.epsilon = *o.epsilon;
            if (o.memory) c.validate.scenario.memory_capacity = *o.memory;
            if (o.batch) c.validate.scenario.batch_size = *o.batch;
            if (o.noise) c.validate.scenario.noise_std = *o.noise;
            if (o.q) c.validate.q_deposit = *o.q;
            break;
        case ExperimentKind::adapt:
        case ExperimentKind::sweep:
            if (o.epochs) (kind == ExperimentKind::sweep ? c.sweep.epochs : c.adapt.epochs) = *o.epochs;
            if (o.runs) (kind == ExperimentKind::sweep ? c.sweep.runs_per_cell : c.general.runs) = *o.runs;
            if (o.epsilon) c.adapt.epsilon = *o.epsilon;
            if (o.memory) c.adapt.memory = *o.memory;
            if (o.delta) c.adapt.delta = *o.delta;
            if (o.q) c.adapt.q_deposit = *o.q;
            if (o.noise) c.adapt.noise_std = *o.noise;
            if (o.batch) c.adapt.batch_size = *o.batch;
            break;
        case ExperimentKind::verify:
            if (o.configurations) c.verify.configurations = *o.configurations;
            if (o.steps) c.verify.steps = *o.steps;
            if (o.inject_fault) c.verify.inject_fault = true;
            break;
        case ExperimentKind::fit:
            if (o.target) c.fit.target_path = *o.target;
            if (o.generations) c.fit.generations = *o.generations;
            if (o.runs) c.fit.runs_per_evaluation = *o.runs;
            if (o.epochs) c.validate.scenario.epochs = *o.epochs;
            break;
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stigmergic foraging and cross-learning experiments"};
    app.require_subcommand(1);
    Overrides o;

    auto* validate = app.add_subcommand("validate", "static patch occupancy against the IFD reference");
    add_common(validate, o);
    add_dynamics(validate, o);
    validate->add_option("--runs", o.runs, "independent runs");
    validate->add_option("--noise", o.noise, "reward noise std");

    auto* adapt = app.add_subcommand("adapt", "two-state bandit adaptation");
    add_common(adapt, o);
    add_dynamics(adapt, o);
    adapt->add_option("--runs", o.runs, "independent runs");
    adapt->add_option("--delta", o.delta, "switch epoch");
    adapt->add_option("--noise", o.noise, "reward noise std");

    auto* sweep = app.add_subcommand("sweep", "memory x switch epoch x epsilon grid");
    add_common(sweep, o);
    add_dynamics(sweep, o);
    sweep->add_option("--runs", o.runs, "runs per cell");
    sweep->add_option("--noise", o.noise, "reward noise std");

    auto* verify = app.add_subcommand("verify", "field / cross-learning equivalence and replicator drift");
    add_common(verify, o);
    verify->add_option("--configurations", o.configurations, "random configurations");
    verify->add_option("--steps", o.steps, "steps per configuration");
    verify->add_flag("--inject-fault", o.inject_fault)->group("");

    auto* fit = app.add_subcommand("fit", "differential evolution fit to an occupancy trajectory");
    add_common(fit, o);
    fit->add_option("--target", o.target, "target occupancy CSV");
    fit->add_option("--generations", o.generations, "DE generations");
    fit->add_option("--runs", o.runs, "runs per evaluation");
    fit->add_option("--epochs", o.epochs, "epochs per run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_codes::usage;
    }

    ExperimentKind kind = ExperimentKind::validate;
    if (*adapt) kind = ExperimentKind::adapt;
    if (*sweep) kind = ExperimentKind::sweep;
    if (*verify) kind = ExperimentKind::verify;
    if (*fit) kind = ExperimentKind::fit;

    ExperimentConfig config;
    try {
        config = build_config(kind, o);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_codes::io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_codes::usage;
    }
    return run_command(config, std::cout, std::cerr);
}
