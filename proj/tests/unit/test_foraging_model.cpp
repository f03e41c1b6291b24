#include "doctest.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stigmergy/foraging_model.hpp"
#include "stigmergy/rng.hpp"

using namespace stigmergy;

TEST_CASE("attractiveness oracle values") {
    const SigmoidParams p;
    CHECK(attractiveness(p, 0.0) == doctest::Approx(1.0 / std::sqrt(51.5)).epsilon(1e-14));
    CHECK(attractiveness(p, 0.0) == doctest::Approx(0.13935).epsilon(1e-4));
    CHECK(attractiveness(p, 0.003) == doctest::Approx(std::sqrt(51.5) * 5.0 / 55.5).epsilon(1e-14));
    CHECK(attractiveness(p, 0.003) == doctest::Approx(0.6465).epsilon(1e-4));
    CHECK(attractiveness(p, 1e300) == doctest::Approx(std::sqrt(51.5)).epsilon(1e-6));
    CHECK(attractiveness(p, std::numeric_limits<double>::infinity()) == std::sqrt(51.5));
    CHECK(attractiveness(p, std::numeric_limits<double>::infinity()) / attractiveness(p, 0.0) ==
          doctest::Approx(51.5).epsilon(1e-14));
}

TEST_CASE("attractiveness rejects negative density and bad params") {
    CHECK_THROWS_AS(attractiveness(SigmoidParams{}, -0.1), std::domain_error);
    CHECK_THROWS(SigmoidParams(0.0, 0.29, 0.003));
    CHECK_THROWS(SigmoidParams(51.5, -1.0, 0.003));
    CHECK_THROWS(SigmoidParams(51.5, 0.29, 0.0));
}

TEST_CASE("sigmoid is bounded and strictly increasing") {
    const SigmoidParams p;
    const double lo = std::sqrt(51.5) / 51.5;
    const double hi = std::sqrt(51.5);
    double prev = attractiveness(p, 0.0);
    for (double d = 1e-6; d < 1e3; d *= 1.5) {
        const double a = attractiveness(p, d);
        REQUIRE(a > lo);
        REQUIRE(a < hi);
        REQUIRE(a > prev);
        prev = a;
    }
}

TEST_CASE("patch caches its attractiveness") {
    const SigmoidParams p;
    PatchSpec patch(0.2, p);
    CHECK(patch.attractiveness() == attractiveness(p, 0.2));
    patch.set_density(0.05, p);
    CHECK(patch.attractiveness() == attractiveness(p, 0.05));
    const SigmoidParams q(40.0, 0.3, 0.004);
    patch.set_params(q);
    CHECK(patch.attractiveness() == attractiveness(q, 0.05));
}

TEST_CASE("ifd_distribution oracle values") {
    const std::vector<double> ones{1, 1, 1, 1};
    const Policy uniform = ifd_distribution(ones);
    for (double x : uniform.probs()) {
        CHECK(x == 0.25);
    }
    const std::vector<double> two{2, 1, 1};
    const Policy p = ifd_distribution(two);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-15));

    const SigmoidParams params;
    std::vector<double> a;
    for (double d : {0.2, 0.1, 0.05, 0.025}) {
        a.push_back(attractiveness(params, d));
    }
    const Policy ifd = ifd_distribution(a);
    const double expected[] = {0.308, 0.266, 0.229, 0.197};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(ifd[i] - expected[i]) < 5e-4);
    }
}

TEST_CASE("ifd_distribution rejects empty and nonpositive input") {
    CHECK_THROWS_AS(ifd_distribution(std::vector<double>{}), std::domain_error);
    CHECK_THROWS_AS(ifd_distribution(std::vector<double>{1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(ifd_distribution(std::vector<double>{1.0, -2.0}), std::domain_error);
}

TEST_CASE("ifd_distribution properties over 1000 random vectors") {
    RngStream rng(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + rng.below(8);
        std::vector<double> a(m);
        for (auto& x : a) {
            x = 1e-3 + 10.0 * rng.uniform();
        }
        const Policy p = ifd_distribution(a);
        const double sum = std::accumulate(p.probs().begin(), p.probs().end(), 0.0);
        REQUIRE(std::abs(sum - 1.0) <= 1e-12);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (a[i] > a[j]) {
                    REQUIRE(p[i] > p[j]);
                }
            }
        }
        const double c = 1e-3 + 1e3 * rng.uniform();
        std::vector<double> scaled(a);
        for (auto& x : scaled) {
            x *= c;
        }
        const Policy q = ifd_distribution(scaled);
        for (std::size_t i = 0; i < m; ++i) {
            REQUIRE(std::abs(p[i] - q[i]) <= 1e-12);
        }
    }
}
