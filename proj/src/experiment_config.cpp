#include "stigmergy/experiment_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace stigmergy {

namespace {

using json = nlohmann::ordered_json;

// Reads one config section, remembering which keys were consumed so that
// typos surface as errors instead of silently falling back to defaults.
class SectionReader {
public:
    SectionReader(const json& root, std::string name) : name_(std::move(name)) {
        if (auto it = root.find(name_); it != root.end()) {
            if (!it->is_object()) {
                throw config_error("config section '" + name_ + "' must be an object");
            }
            section_ = &*it;
        }
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (section_ == nullptr) {
            return;
        }
        if (auto it = section_->find(key); it != section_->end()) {
            try {
                out = it->template get<T>();
            } catch (const json::exception& e) {
                throw config_error("bad value for " + name_ + "." + key + ": " + e.what());
            }
        }
    }

    void get_bounds(const char* key, Bounds& out) {
        std::vector<double> pair{out.lower, out.upper};
        get(key, pair);
        if (pair.size() != 2) {
            throw config_error(name_ + "." + key + " must be [lower, upper]");
        }
        out = Bounds{pair[0], pair[1]};
    }

    void finish() const {
        if (section_ == nullptr) {
            return;
        }
        for (const auto& item : section_->items()) {
            if (seen_.count(item.key()) == 0) {
                throw config_error("unknown config key " + name_ + "." + item.key());
            }
        }
    }

private:
    std::string name_;
    const json* section_ = nullptr;
    std::set<std::string> seen_;
};

json bounds_json(const Bounds& b) { return json::array({b.lower, b.upper}); }

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw config_error(message);
    }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::validate: return "validate";
        case ExperimentKind::adapt: return "adapt";
        case ExperimentKind::sweep: return "sweep";
        case ExperimentKind::verify: return "verify";
        case ExperimentKind::fit: return "fit";
    }
    return "adapt";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
    for (auto kind : {ExperimentKind::validate, ExperimentKind::adapt, ExperimentKind::sweep, ExperimentKind::verify,
                      ExperimentKind::fit}) {
        if (text == to_string(kind)) {
            return kind;
        }
    }
    throw config_error("unknown experiment kind: " + std::string(text));
}

std::string_view to_string(TableFormat format) noexcept {
    return format == TableFormat::json ? "json" : "csv";
}

TableFormat parse_table_format(std::string_view text) {
    if (text == "csv") {
        return TableFormat::csv;
    }
    if (text == "json") {
        return TableFormat::json;
    }
    throw config_error("unknown output format: " + std::string(text));
}

SigmoidParams ValidateSection::sigmoid() const {
    return SigmoidParams(dynamic_range, steepness, density_attract);
}

double ValidateSection::effective_seconds_per_epoch() const noexcept {
    if (seconds_per_epoch > 0.0) {
        return seconds_per_epoch;
    }
    return scenario.epochs == 0 ? 0.0 : 7200.0 / static_cast<double>(scenario.epochs);
}

void ExperimentConfig::check() const {
    switch (general.kind) {
        case ExperimentKind::adapt: {
            require(general.runs >= 1, "adapt needs at least one run");
            require(adapt.delta >= 0 && static_cast<std::size_t>(adapt.delta) < adapt.epochs,
                    "switch epoch delta must be smaller than the number of epochs");
            require(adapt.target_arm < adapt.base_rewards.size(), "target arm out of range");
            require(adapt.threshold > 0.0 && adapt.threshold <= 1.0, "threshold must lie in (0, 1]");
            try {
                make_adapt_config(*this).validate();
            } catch (const std::logic_error& e) {
                throw config_error(e.what());
            }
            break;
        }
        case ExperimentKind::validate: {
            require(general.runs >= 1, "validate needs at least one run");
            require(validate.confidence > 0.0 && validate.confidence < 1.0, "confidence must lie in (0, 1)");
            require(general.runs < 2 || validate.bootstrap_resamples >= 100, "bootstrap needs >= 100 resamples");
            try {
                make_static_config(validate.scenario, validate.sigmoid(), validate.q_deposit, general.seed).validate();
            } catch (const std::logic_error& e) {
                throw config_error(e.what());
            }
            break;
        }
        case ExperimentKind::sweep: {
            require(!sweep.memory.empty() && !sweep.delta.empty() && !sweep.epsilon.empty(), "sweep grid is empty");
            require(sweep.runs_per_cell >= 1, "sweep needs at least one run per cell");
            for (auto d : sweep.delta) {
                require(d >= 0 && static_cast<std::size_t>(d) < sweep.epochs,
                        "every sweep delta must be smaller than the number of epochs");
            }
            for (auto m : sweep.memory) {
                require(m >= 1, "sweep memory sizes must be positive");
            }
            for (auto e : sweep.epsilon) {
                require(e >= 0.0 && e <= 1.0, "sweep epsilon values must lie in [0, 1]");
            }
            require(adapt.target_arm < adapt.base_rewards.size(), "target arm out of range");
            break;
        }
        case ExperimentKind::verify: {
            require(verify.configurations >= 1, "verify needs at least one configuration");
            require(verify.steps >= 1, "verify needs at least one step");
            require(verify.drift_samples >= 2, "drift check needs at least two samples");
            require(verify.drift_policy.size() == verify.drift_payoffs.size(), "drift policy and payoffs differ in length");
            require(verify.tolerance >= 0.0, "tolerance must be >= 0");
            break;
        }
        case ExperimentKind::fit: {
            require(!fit.target_path.empty(), "fit needs a target trajectory (fit.target_path or --target)");
            for (const auto& b : fit.bounds) {
                require(b.lower <= b.upper, "fit bounds must satisfy lower <= upper");
            }
            require(fit.runs_per_evaluation >= 1, "fit needs at least one run per evaluation");
            require(fit.population == 0 || fit.population >= 4, "DE population must be >= 4");
            break;
        }
    }
}

std::string to_json_text(const ExperimentConfig& c) {
    json root;
    root["experiment"] = {
        {"kind", std::string(to_string(c.general.kind))},
        {"seed", c.general.seed},
        {"out_dir", c.general.out_dir},
        {"runs", c.general.runs},
        {"format", std::string(to_string(c.general.format))},
        {"threads", c.general.threads},
    };
    root["adapt"] = {
        {"epochs", c.adapt.epochs},           {"batch_size", c.adapt.batch_size},
        {"memory", c.adapt.memory},           {"q_deposit", c.adapt.q_deposit},
        {"noise_std", c.adapt.noise_std},     {"epsilon", c.adapt.epsilon},
        {"delta", c.adapt.delta},             {"base_rewards", c.adapt.base_rewards},
        {"switched_rewards", c.adapt.switched_rewards},
        {"target_arm", c.adapt.target_arm},   {"threshold", c.adapt.threshold},
    };
    const auto& s = c.validate.scenario;
    root["validate"] = {
        {"densities", s.densities},
        {"include_outside", s.include_outside},
        {"outside_initial_mass", s.outside_initial_mass},
        {"epochs", s.epochs},
        {"memory", s.memory_capacity},
        {"batch_size", s.batch_size},
        {"noise_std", s.noise_std},
        {"epsilon", s.epsilon},
        {"q_deposit", c.validate.q_deposit},
        {"dynamic_range", c.validate.dynamic_range},
        {"steepness", c.validate.steepness},
        {"density_attract", c.validate.density_attract},
        {"seconds_per_epoch", c.validate.seconds_per_epoch},
        {"bootstrap_resamples", c.validate.bootstrap_resamples},
        {"confidence", c.validate.confidence},
    };
    root["sweep"] = {
        {"memory", c.sweep.memory},
        {"delta", c.sweep.delta},
        {"epsilon", c.sweep.epsilon},
        {"runs_per_cell", c.sweep.runs_per_cell},
        {"epochs", c.sweep.epochs},
    };
    root["verify"] = {
        {"configurations", c.verify.configurations},
        {"steps", c.verify.steps},
        {"tolerance", c.verify.tolerance},
        {"drift_samples", c.verify.drift_samples},
        {"drift_gain", c.verify.drift_gain},
        {"drift_policy", c.verify.drift_policy},
        {"drift_payoffs", c.verify.drift_payoffs},
        {"inject_fault", c.verify.inject_fault},
    };
    root["fit"] = {
        {"target_path", c.fit.target_path},
        {"bounds_dynamic_range", bounds_json(c.fit.bounds[kDynamicRange])},
        {"bounds_steepness", bounds_json(c.fit.bounds[kSteepness])},
        {"bounds_density_attract", bounds_json(c.fit.bounds[kDensityAttract])},
        {"bounds_q_deposit", bounds_json(c.fit.bounds[kDeposit])},
        {"population", c.fit.population},
        {"differential_weight", c.fit.differential_weight},
        {"crossover_rate", c.fit.crossover_rate},
        {"generations", c.fit.generations},
        {"convergence_tol", c.fit.convergence_tol},
        {"runs_per_evaluation", c.fit.runs_per_evaluation},
        {"simulation_seed", c.fit.simulation_seed},
    };
    return root.dump(2) + "\n";
}

ExperimentConfig config_from_json_text(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw config_error("config root must be an object");
    }
    static const std::set<std::string> kSections{"experiment", "adapt", "validate", "sweep", "verify", "fit"};
    for (const auto& item : root.items()) {
        if (kSections.count(item.key()) == 0) {
            throw config_error("unknown config section " + item.key());
        }
    }

    ExperimentConfig c;
    {
        SectionReader r(root, "experiment");
        std::string kind(to_string(c.general.kind));
        std::string format(to_string(c.general.format));
        r.get("kind", kind);
        r.get("seed", c.general.seed);
        r.get("out_dir", c.general.out_dir);
        r.get("runs", c.general.runs);
        r.get("format", format);
        r.get("threads", c.general.threads);
        r.finish();
        c.general.kind = parse_experiment_kind(kind);
        c.general.format = parse_table_format(format);
    }
    {
        SectionReader r(root, "adapt");
        r.get("epochs", c.adapt.epochs);
        r.get("batch_size", c.adapt.batch_size);
        r.get("memory", c.adapt.memory);
        r.get("q_deposit", c.adapt.q_deposit);
        r.get("noise_std", c.adapt.noise_std);
        r.get("epsilon", c.adapt.epsilon);
        r.get("delta", c.adapt.delta);
        r.get("base_rewards", c.adapt.base_rewards);
        r.get("switched_rewards", c.adapt.switched_rewards);
        r.get("target_arm", c.adapt.target_arm);
        r.get("threshold", c.adapt.threshold);
        r.finish();
    }
    {
        SectionReader r(root, "validate");
        auto& s = c.validate.scenario;
        r.get("densities", s.densities);
        r.get("include_outside", s.include_outside);
        r.get("outside_initial_mass", s.outside_initial_mass);
        r.get("epochs", s.epochs);
        r.get("memory", s.memory_capacity);
        r.get("batch_size", s.batch_size);
        r.get("noise_std", s.noise_std);
        r.get("epsilon", s.epsilon);
        r.get("q_deposit", c.validate.q_deposit);
        r.get("dynamic_range", c.validate.dynamic_range);
        r.get("steepness", c.validate.steepness);
        r.get("density_attract", c.validate.density_attract);
        r.get("seconds_per_epoch", c.validate.seconds_per_epoch);
        r.get("bootstrap_resamples", c.validate.bootstrap_resamples);
        r.get("confidence", c.validate.confidence);
        r.finish();
    }
    {
        SectionReader r(root, "sweep");
        r.get("memory", c.sweep.memory);
        r.get("delta", c.sweep.delta);
        r.get("epsilon", c.sweep.epsilon);
        r.get("runs_per_cell", c.sweep.runs_per_cell);
        r.get("epochs", c.sweep.epochs);
        r.finish();
    }
    {
        SectionReader r(root, "verify");
        r.get("configurations", c.verify.configurations);
        r.get("steps", c.verify.steps);
        r.get("tolerance", c.verify.tolerance);
        r.get("drift_samples", c.verify.drift_samples);
        r.get("drift_gain", c.verify.drift_gain);
        r.get("drift_policy", c.verify.drift_policy);
        r.get("drift_payoffs", c.verify.drift_payoffs);
        r.get("inject_fault", c.verify.inject_fault);
        r.finish();
    }
    {
        SectionReader r(root, "fit");
        r.get("target_path", c.fit.target_path);
        r.get_bounds("bounds_dynamic_range", c.fit.bounds[kDynamicRange]);
        r.get_bounds("bounds_steepness", c.fit.bounds[kSteepness]);
        r.get_bounds("bounds_density_attract", c.fit.bounds[kDensityAttract]);
        r.get_bounds("bounds_q_deposit", c.fit.bounds[kDeposit]);
        r.get("population", c.fit.population);
        r.get("differential_weight", c.fit.differential_weight);
        r.get("crossover_rate", c.fit.crossover_rate);
        r.get("generations", c.fit.generations);
        r.get("convergence_tol", c.fit.convergence_tol);
        r.get("runs_per_evaluation", c.fit.runs_per_evaluation);
        r.get("simulation_seed", c.fit.simulation_seed);
        r.finish();
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot read config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

SimConfig make_adapt_config(const ExperimentConfig& config) {
    const auto& a = config.adapt;
    SimConfig sim(BanditSpec(a.base_rewards, a.switched_rewards, a.delta, a.noise_std));
    sim.population.epsilon = a.epsilon;
    sim.population.batch_size = a.batch_size;
    sim.memory_capacity = a.memory;
    sim.q_deposit = a.q_deposit;
    sim.epochs = a.epochs;
    sim.master_seed = config.general.seed;
    return sim;
}

}  // namespace stigmergy
