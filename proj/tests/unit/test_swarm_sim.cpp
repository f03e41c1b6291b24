#include "doctest.h"

#include <vector>

#include "stigmergy/environments.hpp"
#include "stigmergy/errors.hpp"
#include "stigmergy/swarm_sim.hpp"

using namespace stigmergy;

namespace {

SimConfig switch_config(double epsilon) {
    SimConfig c(three_arm_switch(100));
    c.population.epsilon = epsilon;
    c.epochs = 500;
    c.memory_capacity = 350;
    c.q_deposit = 0.02;
    return c;
}

}  // namespace

TEST_CASE("zero deposit freezes the policy") {
    SimConfig c = switch_config(0.0);
    c.q_deposit = 0.0;
    c.epochs = 50;
    const RunTrace t = run_experiment(c, 5);
    for (std::size_t r = 0; r <= 50; ++r) {
        for (std::size_t a = 0; a < 3; ++a) {
            REQUIRE(t.policy_history(r, a) == t.policy_history(0, a));
        }
    }
}

TEST_CASE("all explorers push the good arm up monotonically") {
    SimConfig c(BanditSpec({0.0, 2.73, 0.0}, 0.0));
    c.population.epsilon = 1.0;
    c.epochs = 30;
    SwarmState state{initial_policy(3), ReplayBuffer(c.memory_capacity)};
    RngStream rng(3);
    double prev = state.policy[1];
    for (std::int64_t e = 0; e < 30; ++e) {
        run_epoch(state, c, e, rng);
        CHECK(state.policy[1] > prev);
        prev = state.policy[1];
        for (const auto& d : state.buffer.entries()) {
            REQUIRE(d.arm == 1);
        }
    }
}

TEST_CASE("explorers need a positive reward somewhere") {
    SimConfig c(BanditSpec({0.0, 0.0}, 0.0));
    c.population.epsilon = 0.5;
    c.epochs = 1;
    CHECK_THROWS_AS(run_experiment(c, 1), degenerate_state_error);
}

TEST_CASE("zero epochs keep only the initial row") {
    SimConfig c = switch_config(0.0);
    c.epochs = 0;
    c.env = BanditSpec({0.0, 2.73, 0.0});
    const RunTrace t = run_experiment(c, 1);
    CHECK(t.policy_history.rows() == 1);
    CHECK(t.epochs() == 0);
    CHECK(t.policy_history(0, 0) == 0.9);
}

TEST_CASE("runs are deterministic") {
    SimConfig c = switch_config(0.1);
    c.epochs = 150;
    CHECK(run_experiment(c, 77) == run_experiment(c, 77));
    CHECK(!(run_experiment(c, 77) == run_experiment(c, 78)));
}

TEST_CASE("ensembles do not depend on the thread count") {
    SimConfig c = switch_config(0.1);
    c.epochs = 120;
    c.master_seed = 4;
    const auto one = run_ensemble(c, 12, 1);
    const auto many = run_ensemble(c, 12, 5);
    CHECK(one == many);
    const auto single = run_ensemble(c, 1, 1);
    CHECK(single.front() == run_experiment(c, ensemble_run_seed(4, 0)));
    CHECK(single.front().run_seed == ensemble_run_seed(4, 0));
}

TEST_CASE("every row is on the simplex") {
    for (double eps : {0.0, 0.1, 0.5}) {
        SimConfig c = switch_config(eps);
        c.epochs = 200;
        for (const auto& t : run_ensemble(c, 8, 0)) {
            for (std::size_t r = 0; r < t.policy_history.rows(); ++r) {
                REQUIRE(simplex_deviation(t.policy_history.row(r)) <= 1e-12);
                for (double x : t.policy_history.row(r)) {
                    REQUIRE(x >= 0.0);
                }
            }
        }
    }
}

TEST_CASE("single good arm consensus is monotone") {
    SimConfig c(BanditSpec({0.0, 2.73, 0.0}, 0.0));
    c.epochs = 200;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const RunTrace t = run_experiment(c, seed);
        for (std::size_t r = 1; r < t.policy_history.rows(); ++r) {
            REQUIRE(t.policy_history(r, 1) >= t.policy_history(r - 1, 1));
        }
    }
}

TEST_CASE("invalid configurations are rejected") {
    SimConfig c = switch_config(0.0);
    c.population.epsilon = 1.5;
    CHECK_THROWS(c.validate());
    c = switch_config(0.0);
    c.population.batch_size = 0;
    CHECK_THROWS(c.validate());
    c = switch_config(0.0);
    c.memory_capacity = 0;
    CHECK_THROWS(c.validate());
    c = switch_config(0.0);
    c.q_deposit = -1.0;
    CHECK_THROWS(c.validate());
    c = switch_config(0.0);
    c.start_policy = Policy::uniform(2);
    CHECK_THROWS(c.validate());
}

TEST_CASE("static scenario layout") {
    const StaticScenario s;
    CHECK(s.num_arms() == 5);
    const auto a = scenario_attractiveness(s, SigmoidParams{});
    CHECK(a.back() == attractiveness(SigmoidParams{}, 0.0));
    const Policy start = scenario_start_policy(s);
    CHECK(start[4] == doctest::Approx(0.96).epsilon(1e-15));
    CHECK(start[0] == doctest::Approx(0.01).epsilon(1e-12));

    StaticScenario inside = s;
    inside.include_outside = false;
    CHECK(scenario_start_policy(inside) == Policy::uniform(4));

    const SimConfig c = make_static_config(s, SigmoidParams{}, 0.02, 9);
    CHECK(c.env.num_arms() == 5);
    CHECK(c.env.noise_std() == 0.0);
    CHECK(c.epochs == 120);
    CHECK(c.master_seed == 9);
}
