#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "stigmergy/errors.hpp"
#include "stigmergy/pheromone_field.hpp"
#include "stigmergy/rng.hpp"

using namespace stigmergy;

TEST_CASE("fresh field has unit pheromone") {
    const PheromoneField f(4, 0.9, 0.02);
    for (double t : f.tau()) {
        CHECK(t == 1.0);
    }
}

TEST_CASE("step oracle values") {
    const PheromoneField f(2, 0.9, 0.02);
    const auto g = f.step(0);
    CHECK(g.tau()[0] == doctest::Approx(0.92).epsilon(1e-15));
    CHECK(g.tau()[1] == doctest::Approx(0.90).epsilon(1e-15));
    CHECK(f.tau()[0] == 1.0);

    const PheromoneField id(2, 1.0, 0.0);
    CHECK(id.step(1).tau()[0] == 1.0);
    CHECK(id.step(1).tau()[1] == 1.0);

    const PheromoneField acc(2, 1.0, 0.02);
    const auto twice = acc.step(0).step(0);
    CHECK(twice.tau()[0] == doctest::Approx(1.04).epsilon(1e-15));
    CHECK(twice.tau()[1] == 1.0);

    CHECK_THROWS_AS(f.step(2), std::out_of_range);
}

TEST_CASE("construction rejects invalid parameters") {
    CHECK_THROWS(PheromoneField(2, 1.1, 0.02));
    CHECK_THROWS(PheromoneField(2, 0.5, -0.1));
    CHECK_THROWS(PheromoneField(std::vector<double>{1.0, -1.0}, 0.5, 0.1));
}

TEST_CASE("choice_distribution oracle values") {
    const PheromoneField f(4, 1.0, 0.0);
    const std::vector<double> ones{1, 1, 1, 1};
    const Policy uniform = choice_distribution(f, ones);
    for (double x : uniform.probs()) {
        CHECK(x == 0.25);
    }
    const PheromoneField g(std::vector<double>{2.0, 1.0}, 1.0, 0.0);
    const std::vector<double> a2{1, 1};
    CHECK(choice_distribution(g, a2)[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    const PheromoneField h(2, 1.0, 0.0);
    const std::vector<double> a{2.216, 0.139};
    CHECK(choice_distribution(h, a)[0] == doctest::Approx(0.941).epsilon(1e-3));
    CHECK(choice_distribution(h, a)[1] == doctest::Approx(0.059).epsilon(2e-2));
}

TEST_CASE("choice_distribution errors") {
    const PheromoneField f(2, 1.0, 0.0);
    CHECK_THROWS_AS(choice_distribution(f, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(choice_distribution(f, std::vector<double>{0.0, 0.0}), degenerate_state_error);
    const PheromoneField zero(std::vector<double>{0.0, 0.0}, 1.0, 0.0);
    CHECK_THROWS_AS(choice_distribution(zero, std::vector<double>{1.0, 1.0}), degenerate_state_error);
}

TEST_CASE("field properties under random steps") {
    RngStream rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + rng.below(4);
        const double rho = rng.uniform();
        const double q = 0.1 * rng.uniform();
        PheromoneField f(m, rho, q);
        for (int s = 0; s < 100; ++s) {
            f.step_in_place(rng.below(m));
            for (double t : f.tau()) {
                REQUIRE(t >= 0.0);
            }
        }

        PheromoneField grow(m, 1.0, 0.05);
        std::vector<double> before(grow.tau().begin(), grow.tau().end());
        grow.step_in_place(rng.below(m));
        for (std::size_t i = 0; i < m; ++i) {
            REQUIRE(grow.tau()[i] >= before[i]);
        }

        PheromoneField decay(m, rho, 0.0);
        decay.step_in_place(0);
        for (double t : decay.tau()) {
            REQUIRE(t == doctest::Approx(rho).epsilon(1e-15));
        }

        std::vector<double> a(m), tau(m), scaled(m);
        const double c = 0.01 + 100.0 * rng.uniform();
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = 0.1 + rng.uniform();
            tau[i] = 0.1 + rng.uniform();
            scaled[i] = c * tau[i];
        }
        const Policy p = choice_distribution(PheromoneField(tau, rho, q), a);
        const Policy r = choice_distribution(PheromoneField(scaled, rho, q), a);
        for (std::size_t i = 0; i < m; ++i) {
            REQUIRE(std::abs(p[i] - r[i]) <= 1e-12);
        }
    }
}
