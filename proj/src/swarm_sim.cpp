#include "stigmergy/swarm_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "stigmergy/errors.hpp"

namespace stigmergy {

namespace {

constexpr std::uint64_t kRunStream = 0x72756eULL;  // "run"

void record_row(Matrix& history, std::size_t row, const Policy& policy) {
    double min_entry = 0.0;
    for (std::size_t a = 0; a < policy.size(); ++a) {
        history(row, a) = policy[a];
        min_entry = std::min(min_entry, policy[a]);
    }
    if (simplex_deviation(policy.probs()) > 1e-12 || min_entry < 0.0) {
        throw std::logic_error("policy left the simplex at epoch " + std::to_string(row));
    }
}

}  // namespace

void PopulationConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::domain_error("explorer fraction epsilon must lie in [0, 1]");
    }
    if (batch_size == 0) {
        throw std::domain_error("batch size must be >= 1");
    }
}

Policy SimConfig::starting_policy() const {
    return start_policy ? *start_policy : initial_policy(env.num_arms());
}

void SimConfig::validate() const {
    population.validate();
    if (env.num_arms() < 2) {
        throw std::domain_error("simulation needs at least two arms");
    }
    if (memory_capacity == 0) {
        throw std::domain_error("memory capacity must be positive");
    }
    if (!(q_deposit >= 0.0) || !std::isfinite(q_deposit)) {
        throw std::domain_error("deposit quantum Q must be >= 0");
    }
    if (start_policy && start_policy->size() != env.num_arms()) {
        throw std::domain_error("start policy length does not match the number of arms");
    }
}

void run_epoch(SwarmState& state, const SimConfig& config, std::int64_t epoch, RngStream& rng) {
    const auto& rewards = rewards_at(config.env, epoch);
    const std::size_t num_arms = rewards.size();
    const double epsilon = config.population.epsilon;
    const double q = config.q_deposit;

    double reward_total = 0.0;
    for (double r : rewards) {
        reward_total += r;
    }
    if (epsilon > 0.0 && !(reward_total > 0.0)) {
        throw degenerate_state_error("explorers need at least one arm with positive attractiveness");
    }

    for (std::size_t decision = 0; decision < config.population.batch_size; ++decision) {
        const bool explorer = epsilon > 0.0 && rng.uniform() < epsilon;
        const std::size_t arm =
            explorer ? rng.weighted(rewards, reward_total) : rng.categorical(state.policy.probs());

        const double sampled = sample_attractiveness(config.env, arm, epoch, rng);

        double weighted_pheromone = 0.0;
        for (std::size_t j = 0; j < num_arms; ++j) {
            const double tau = 1.0 + q * static_cast<double>(state.buffer.count(j));
            weighted_pheromone += tau * rewards[j];
        }
        const double gain =
            (q * sampled == 0.0) ? 0.0 : stigmergic_gain_from_total(weighted_pheromone, q, sampled);

        state.policy.reinforce(arm, gain);
        state.buffer.push(arm, sampled);
    }
}

RunTrace run_experiment(const SimConfig& config, std::uint64_t run_seed) {
    config.validate();
    const std::size_t num_arms = config.env.num_arms();

    SwarmState state{config.starting_policy(), ReplayBuffer(config.memory_capacity)};
    RngStream rng = RngStream::derive(run_seed, {kRunStream});

    RunTrace trace{Matrix(config.epochs + 1, num_arms), run_seed};
    record_row(trace.policy_history, 0, state.policy);
    for (std::size_t t = 0; t < config.epochs; ++t) {
        run_epoch(state, config, static_cast<std::int64_t>(t), rng);
        record_row(trace.policy_history, t + 1, state.policy);
    }
    return trace;
}

std::uint64_t ensemble_run_seed(std::uint64_t master_seed, std::size_t index) noexcept {
    const std::uint64_t path[] = {static_cast<std::uint64_t>(index)};
    return derive_key(master_seed, path);
}

std::vector<RunTrace> run_ensemble(const SimConfig& config, std::size_t num_runs, std::size_t threads) {
    if (num_runs == 0) {
        throw std::domain_error("ensemble needs at least one run");
    }
    config.validate();
    std::vector<RunTrace> traces(num_runs);
    detail::parallel_for(num_runs, threads, [&](std::size_t i) {
        traces[i] = run_experiment(config, ensemble_run_seed(config.master_seed, i));
    });
    return traces;
}

std::vector<double> scenario_attractiveness(const StaticScenario& scenario, const SigmoidParams& params) {
    std::vector<double> values;
    values.reserve(scenario.num_arms());
    for (double density : scenario.densities) {
        values.push_back(attractiveness(params, density));
    }
    if (scenario.include_outside) {
        values.push_back(attractiveness(params, 0.0));
    }
    return values;
}

Policy scenario_start_policy(const StaticScenario& scenario) {
    const std::size_t patches = scenario.densities.size();
    if (patches == 0) {
        throw std::domain_error("scenario needs at least one patch");
    }
    if (!scenario.include_outside) {
        return Policy::uniform(patches);
    }
    if (!(scenario.outside_initial_mass >= 0.0 && scenario.outside_initial_mass <= 1.0)) {
        throw std::domain_error("initial outside mass must lie in [0, 1]");
    }
    std::vector<double> weights(patches, (1.0 - scenario.outside_initial_mass) / static_cast<double>(patches));
    weights.push_back(scenario.outside_initial_mass);
    return Policy::from_weights(weights);
}

SimConfig make_static_config(const StaticScenario& scenario, const SigmoidParams& params, double q_deposit,
                             std::uint64_t master_seed) {
    SimConfig config(BanditSpec(scenario_attractiveness(scenario, params), scenario.noise_std));
    config.population.epsilon = scenario.epsilon;
    config.population.batch_size = scenario.batch_size;
    config.memory_capacity = scenario.memory_capacity;
    config.q_deposit = q_deposit;
    config.epochs = scenario.epochs;
    config.master_seed = master_seed;
    config.start_policy = scenario_start_policy(scenario);
    return config;
}

}  // namespace stigmergy
