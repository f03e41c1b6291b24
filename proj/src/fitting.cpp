#include "stigmergy/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"
#include "stigmergy/metrics.hpp"
#include "stigmergy/rng.hpp"

namespace stigmergy {

namespace {

constexpr std::uint64_t kDeStream = 0x6465ULL;  // "de"
constexpr double kInfinity = std::numeric_limits<double>::infinity();

double reflect_into(double value, const Bounds& b) {
    if (value < b.lower) {
        value = b.lower + (b.lower - value);
    }
    if (value > b.upper) {
        value = b.upper - (value - b.upper);
    }
    return std::clamp(value, b.lower, b.upper);
}

double guarded(const Objective& objective, std::span<const double> x) {
    const double f = objective(x);
    return std::isfinite(f) ? f : kInfinity;
}

}  // namespace

DeResult differential_evolution(const Objective& objective, std::span<const Bounds> bounds, const DeParams& params) {
    const std::size_t dim = bounds.size();
    if (dim == 0) {
        throw std::invalid_argument("differential evolution needs at least one parameter");
    }
    for (const auto& b : bounds) {
        if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || b.lower > b.upper) {
            throw std::invalid_argument("invalid bounds: lower must not exceed upper");
        }
    }
    const std::size_t np = params.population == 0 ? 15 * dim : params.population;
    if (np < 4) {
        throw std::invalid_argument("DE/rand/1 needs a population of at least 4");
    }
    if (!(params.crossover_rate >= 0.0 && params.crossover_rate <= 1.0)) {
        throw std::invalid_argument("crossover rate must lie in [0, 1]");
    }
    if (!(params.differential_weight > 0.0 && params.differential_weight <= 2.0)) {
        throw std::invalid_argument("differential weight must lie in (0, 2]");
    }

    RngStream rng = RngStream::derive(params.seed, {kDeStream});
    std::vector<std::vector<double>> population(np, std::vector<double>(dim));
    for (auto& member : population) {
        for (std::size_t j = 0; j < dim; ++j) {
            member[j] = bounds[j].lower + rng.uniform() * (bounds[j].upper - bounds[j].lower);
        }
    }
    std::vector<double> fitness(np);
    detail::parallel_for(np, params.threads, [&](std::size_t i) { fitness[i] = guarded(objective, population[i]); });

    DeResult result;
    result.evaluations = np;
    auto best_index = [&] {
        return static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
    };
    result.history.push_back(fitness[best_index()]);

    std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
    std::vector<double> trial_fitness(np);
    for (std::size_t gen = 0; gen < params.max_generations; ++gen) {
        const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
        if (std::isfinite(*hi) && *hi - *lo <= params.convergence_tol) {
            break;
        }

        for (std::size_t i = 0; i < np; ++i) {
            std::size_t r1 = 0;
            std::size_t r2 = 0;
            std::size_t r3 = 0;
            do {
                r1 = rng.below(np);
            } while (r1 == i);
            do {
                r2 = rng.below(np);
            } while (r2 == i || r2 == r1);
            do {
                r3 = rng.below(np);
            } while (r3 == i || r3 == r1 || r3 == r2);
            const std::size_t forced = rng.below(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                if (j == forced || rng.uniform() < params.crossover_rate) {
                    const double mutant = population[r1][j] +
                                          params.differential_weight * (population[r2][j] - population[r3][j]);
                    trials[i][j] = reflect_into(mutant, bounds[j]);
                } else {
                    trials[i][j] = population[i][j];
                }
            }
        }

        detail::parallel_for(np, params.threads,
                             [&](std::size_t i) { trial_fitness[i] = guarded(objective, trials[i]); });
        result.evaluations += np;

        for (std::size_t i = 0; i < np; ++i) {
            if (trial_fitness[i] <= fitness[i]) {
                population[i] = trials[i];
                fitness[i] = trial_fitness[i];
            }
        }
        ++result.generations;
        result.history.push_back(fitness[best_index()]);
    }

    const std::size_t best = best_index();
    result.best = population[best];
    result.best_fitness = fitness[best];
    return result;
}

Matrix simulate_occupancy(const StaticScenario& scenario, const SigmoidParams& params, double q_deposit,
                          std::uint64_t seed, std::size_t runs, std::size_t threads) {
    const SimConfig config = make_static_config(scenario, params, q_deposit, seed);
    const auto traces = run_ensemble(config, runs, threads);
    return mean_trajectory(traces);
}

FitResult fit_de(const FitSpec& spec) {
    if (spec.runs_per_evaluation == 0) {
        throw std::invalid_argument("need at least one run per fitness evaluation");
    }
    if (spec.target.rows() != spec.scenario.epochs + 1 || spec.target.cols() != spec.scenario.num_arms()) {
        throw std::invalid_argument("target trajectory shape does not match the simulated occupancy");
    }
    const Objective objective = [&spec](std::span<const double> x) {
        try {
            const SigmoidParams sigmoid(x[kDynamicRange], x[kSteepness], x[kDensityAttract]);
            const Matrix simulated =
                simulate_occupancy(spec.scenario, sigmoid, x[kDeposit], spec.simulation_seed, spec.runs_per_evaluation);
            return mse(simulated, spec.target);
        } catch (const std::exception&) {
            return kInfinity;
        }
    };
    const DeResult de = differential_evolution(objective, spec.bounds, spec.de);

    FitResult fit;
    fit.sigmoid = SigmoidParams(de.best[kDynamicRange], de.best[kSteepness], de.best[kDensityAttract]);
    fit.q_deposit = de.best[kDeposit];
    fit.best_fitness = de.best_fitness;
    fit.history = de.history;
    fit.generations = de.generations;
    fit.evaluations = de.evaluations;
    return fit;
}

}  // namespace stigmergy
