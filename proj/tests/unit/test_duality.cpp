#include <cmath>
#include <random>

#include <doctest.h>

#include "quup/duality.hpp"
#include "quup/errors.hpp"
#include "helpers.hpp"

using namespace quup;
using namespace quup::duality;
using testutil::rel_close;

TEST_CASE("visibility_from_extrema") {
    CHECK(visibility_from_extrema(1.0, 0.0) == 1.0);
    CHECK(visibility_from_extrema(1.0, 1.0) == 0.0);
    // Extrema of a sech(1/2)-contrast pattern at arbitrary scale.
    const double i0 = 3.7;
    const double i_max = 0.5 * i0 * (1.0 + testutil::kSechHalf);
    const double i_min = 0.5 * i0 * (1.0 - testutil::kSechHalf);
    CHECK(rel_close(visibility_from_extrema(i_max, i_min), testutil::kSechHalf, 1e-12));

    CHECK_THROWS_AS(visibility_from_extrema(0.5, 0.6), DomainError);
    CHECK_THROWS_AS(visibility_from_extrema(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(visibility_from_extrema(1.0, -0.1), DomainError);
}

TEST_CASE("predictability_from_probs") {
    CHECK(predictability_from_probs(0.5, 0.5) == 0.0);
    CHECK(predictability_from_probs(0.123, 0.0) == 1.0);
    // (e^-2, e^-1) is the attenuation pair of paths differing by one
    // survival length: tanh(1/2).
    CHECK(rel_close(predictability_from_probs(std::exp(-2.0), std::exp(-1.0)),
                    testutil::kTanhHalf, 1e-12));
    CHECK_THROWS_AS(predictability_from_probs(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(predictability_from_probs(-0.1, 0.5), DomainError);
}

TEST_CASE("scale invariance") {
    std::mt19937 rng(42u);
    std::uniform_real_distribution<double> uni(0.01, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double a = uni(rng), b = uni(rng);
        for (double scale : {1e-6, 3.0, 1e6}) {
            CHECK(rel_close(visibility_from_extrema(std::max(a, b) * scale,
                                                    std::min(a, b) * scale),
                            visibility_from_extrema(std::max(a, b), std::min(a, b)), 1e-13));
            CHECK(rel_close(predictability_from_probs(a * scale, b * scale),
                            predictability_from_probs(a, b), 1e-13));
        }
    }
}

TEST_CASE("duality_check") {
    SUBCASE("perfect fringe, no which-way information") {
        const DualityResult r = duality_check(1.0, 0.0);
        CHECK(r.residual == 0.0);
        CHECK(r.coherent);
        CHECK(!r.violation);
    }
    SUBCASE("hyperbolic pairs sit on the coherence circle") {
        for (double x : {0.1, 0.5, 2.0}) {
            const DualityResult r = duality_check(1.0 / std::cosh(x), std::tanh(x));
            CHECK(std::abs(r.residual) < 1e-12);
            CHECK(r.coherent);
        }
    }
    SUBCASE("an impossible pair is flagged, not clipped") {
        const DualityResult r = duality_check(0.9, 0.9);
        CHECK(rel_close(r.residual, 0.62, 1e-12));
        CHECK(r.violation);
        CHECK(!r.coherent);
    }
    SUBCASE("inputs outside [0,1] are rejected") {
        CHECK_THROWS_AS(duality_check(1.1, 0.0), DomainError);
        CHECK_THROWS_AS(duality_check(0.5, -0.01), DomainError);
        CHECK_THROWS_AS(duality_check(std::nan(""), 0.5), DomainError);
    }
}
