#include "doctest.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stigmergy/cross_learning.hpp"
#include "stigmergy/errors.hpp"
#include "stigmergy/rng.hpp"

using namespace stigmergy;

TEST_CASE("cl_update oracle values") {
    const Policy p({0.5, 0.5});
    const Policy q = cl_update(p, 0, 0.1);
    CHECK(q[0] == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(q[1] == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(cl_update(p, 1, 0.0) == p);

    const Policy vertex({1.0, 0.0});
    for (double r : {0.0, 0.3, 1.0}) {
        const Policy v = cl_update(vertex, 0, r);
        CHECK(v[0] == 1.0);
        CHECK(v[1] == 0.0);
    }
    CHECK_THROWS_AS(cl_update(p, 0, 1.5), std::domain_error);
    CHECK_THROWS_AS(cl_update(p, 0, -0.01), std::domain_error);
}

TEST_CASE("stigmergic_gain oracle values") {
    const std::vector<double> a{1.0, 1.0};
    const std::vector<double> tau{1.0, 1.0};
    CHECK(stigmergic_gain(a, tau, 1.0, 0.02, 0) == doctest::Approx(0.02 / 2.02).epsilon(1e-15));
    CHECK(stigmergic_gain(a, tau, 1.0, 0.02, 0) == doctest::Approx(0.009901).epsilon(1e-4));

    const std::vector<double> single{3.0};
    const std::vector<double> tau1{1.0};
    const double g = stigmergic_gain(single, tau1, 0.8, 0.05, 0);
    CHECK(g == doctest::Approx(0.05 * 3.0 / (0.8 * 3.0 + 0.05 * 3.0)).epsilon(1e-15));
    const Policy one({1.0});
    CHECK(cl_update(one, 0, g)[0] == 1.0);

    const std::vector<double> zero_chosen{0.0, 2.0};
    CHECK(stigmergic_gain(zero_chosen, tau, 1.0, 0.02, 0) == 0.0);
    const Policy p({0.3, 0.7});
    CHECK(cl_update(p, 0, 0.0) == p);

    CHECK_THROWS_AS(stigmergic_gain_from_total(0.0, 0.0, 1.0), degenerate_state_error);
}

TEST_CASE("stigmergic_gain decreases with total pheromone") {
    const std::vector<double> a{1.0, 2.0};
    double prev = 1.0;
    for (double t = 0.5; t < 50.0; t *= 2.0) {
        const std::vector<double> tau{t, t};
        const double g = stigmergic_gain(a, tau, 0.9, 0.05, 1);
        CHECK(g < prev);
        CHECK(g >= 0.0);
        CHECK(g < 1.0);
        prev = g;
    }
}

TEST_CASE("replay buffer and buffered_tau") {
    ReplayBuffer empty(10);
    const auto base = buffered_tau(empty, 3, 0.02);
    CHECK(base == std::vector<double>{1.0, 1.0, 1.0});

    ReplayBuffer five(10);
    for (int i = 0; i < 5; ++i) {
        five.push(1, 2.73);
    }
    const auto t = buffered_tau(five, 3, 0.02);
    CHECK(t[0] == 1.0);
    CHECK(t[1] == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(t[2] == 1.0);

    ReplayBuffer two(2);
    two.push(0, 1.0);
    two.push(1, 1.0);
    two.push(2, 1.0);
    CHECK(two.size() == 2);
    CHECK(two.count(0) == 0);
    CHECK(two.count(1) == 1);
    CHECK(two.count(2) == 1);
    CHECK(two.entries().front() == Deposit{1, 1.0});

    CHECK_THROWS_AS(buffered_tau(two, 2, 0.02), std::out_of_range);
    CHECK_THROWS(ReplayBuffer(0));
}

TEST_CASE("buffer never exceeds capacity and counts match entries") {
    RngStream rng(5);
    ReplayBuffer buffer(37);
    for (int i = 0; i < 1000; ++i) {
        buffer.push(rng.below(4), rng.uniform());
        REQUIRE(buffer.size() <= 37);
        std::vector<std::size_t> counts(4, 0);
        for (const auto& d : buffer.entries()) {
            ++counts[d.arm];
        }
        for (std::size_t a = 0; a < 4; ++a) {
            REQUIRE(counts[a] == buffer.count(a));
        }
    }
}

TEST_CASE("replicator_rhs oracle values and zero sum") {
    const std::vector<double> q{1.0, 0.0};
    const auto d = replicator_rhs(Policy({0.5, 0.5}), q);
    CHECK(d[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(-0.25).epsilon(1e-15));

    const std::vector<double> flat{0.7, 0.7, 0.7};
    for (double x : replicator_rhs(Policy({0.2, 0.3, 0.5}), flat)) {
        CHECK(std::abs(x) <= 1e-15);
    }
    const auto v = replicator_rhs(Policy({1.0, 0.0}), std::vector<double>{0.1, 5.0});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK_THROWS(replicator_rhs(Policy({1.0, 0.0}), std::vector<double>{1.0}));

    RngStream rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 2 + rng.below(5);
        std::vector<double> w(k), payoff(k);
        for (std::size_t i = 0; i < k; ++i) {
            w[i] = rng.uniform() + 1e-9;
            payoff[i] = 10.0 * rng.uniform() - 5.0;
        }
        const auto drift = replicator_rhs(Policy::from_weights(w), payoff);
        REQUIRE(std::abs(std::accumulate(drift.begin(), drift.end(), 0.0)) <= 1e-12);
    }
}

TEST_CASE("equivalence oracle cases") {
    const std::vector<double> a{1.0, 1.0};
    CHECK(verify_equivalence(a, 1.0, 0.02, 100, 17) <= 1e-12);
    const std::vector<double> b{0.5, 3.0, 7.0};
    CHECK(verify_equivalence(b, 1.0, 0.0, 50, 3) == 0.0);
    // With rho < 1 the explicit path rescales tau every step, so only rounding separates the paths.
    CHECK(verify_equivalence(b, 0.6, 0.0, 50, 3) <= 4 * std::numeric_limits<double>::epsilon());
    CHECK_THROWS(verify_equivalence(std::vector<double>{1.0}, 0.5, 0.1, 10, 1));
    CHECK_THROWS(verify_equivalence(a, 0.5, 0.1, 0, 1));
}

TEST_CASE("equivalence suite over 1000 random configurations") {
    const auto result = run_equivalence_suite(1000, 200, 0xC0FFEE);
    CHECK(result.configurations == 1000);
    CHECK(result.max_deviation <= 1e-12);
}

TEST_CASE("late evaporation fault is detected") {
    const auto result = run_equivalence_suite(50, 200, 1, EquivalenceFault::late_evaporation);
    CHECK(result.max_deviation > 1e-6);
}

TEST_CASE("one-step drift matches the replicator dynamic within 3 standard errors") {
    const Policy p({0.3, 0.7});
    const std::vector<double> payoffs{1.0, 0.4};
    const double gain = 0.05;
    RngStream rng = RngStream::derive(2718, {1});
    const auto est = estimate_one_step_drift(p, payoffs, gain, 100000, rng);
    const auto analytic = replicator_rhs(p, payoffs);
    for (std::size_t a = 0; a < 2; ++a) {
        CHECK(std::abs(est.mean[a] - gain * analytic[a]) <= 3.0 * est.standard_error[a]);
    }
}
