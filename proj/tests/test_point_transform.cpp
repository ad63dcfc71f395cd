#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptdiff/point_transform.hpp"

#include <cmath>
#include <random>

using ptdiff::errc;
using ptdiff::error;
using ptdiff::point_transform;

namespace {

errc thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const error& e) {
        return e.code();
    }
    REQUIRE(false);
    return errc::numerical_failure;
}

// random valid transforms for the property checks
point_transform random_transform(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (u01(rng) < 0.4) {
        return point_transform::monomial(0.3 + 3.7 * u01(rng));
    }
    const std::size_t deg = 1 + 2 * static_cast<std::size_t>(u01(rng) * 3.0); // 1, 3, 5, 7
    std::vector<double> c(deg, 0.0);
    for (std::size_t j = 0; j < deg; j += 2) c[j] = 2.0 * u01(rng);          // odd powers
    for (std::size_t j = 1; j + 1 < deg; j += 2) c[j] = 0.99 * c[j + 1] * u01(rng);
    if (c[deg - 1] == 0.0) c[deg - 1] = 1.0;
    return point_transform::polynomial(c);
}

} // namespace

TEST_CASE("validation accepts the paper's example and rejects the named violations") {
    CHECK_NOTHROW(point_transform::polynomial({1.0, 0.0, 1.0})); // x + x^3
    CHECK_NOTHROW(point_transform::polynomial({0.0, 0.0, 1.0})); // x^3, invertible a.e.
    CHECK_NOTHROW(point_transform::polynomial({0.0, 0.0, 0.0, 0.0, 1.0})); // x^5
    CHECK_NOTHROW(point_transform::polynomial({1.0, 0.5, 1.0}));
    CHECK_NOTHROW(point_transform::monomial(0.5));

    CHECK(thrown_code([] { point_transform::polynomial({1.0, 2.0, 1.0}); }) ==
          errc::even_coefficient_not_dominated);
    CHECK(thrown_code([] { point_transform::polynomial({1.0, 1.0, 1.0}); }) ==
          errc::even_coefficient_not_dominated);
    CHECK(thrown_code([] { point_transform::polynomial({1.0, -0.5, 1.0}); }) ==
          errc::negative_coefficient);
    CHECK(thrown_code([] { point_transform::polynomial({0.0, 0.0}); }) ==
          errc::all_zero_coefficients);
    CHECK(thrown_code([] { point_transform::polynomial({1.0, 2.0}); }) ==
          errc::even_leading_power);
    CHECK(thrown_code([] { point_transform::monomial(0.0); }) == errc::non_positive_beta);
    CHECK(thrown_code([] { point_transform::monomial(-2.0); }) == errc::non_positive_beta);

    // trailing zeros are trimmed before the leading-power check
    CHECK_NOTHROW(point_transform::polynomial({1.0, 0.0}));
}

TEST_CASE("evaluate matches the worked examples") {
    const auto cubic = point_transform::polynomial({1.0, 0.0, 1.0});
    CHECK(cubic.evaluate(1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(point_transform::monomial(1.0).evaluate(-3.7) == doctest::Approx(-3.7));
    CHECK(point_transform::monomial(3.0).evaluate(2.0) == doctest::Approx(8.0));
}

TEST_CASE("derivative matches the worked examples and flags the unbounded node") {
    const auto cubic = point_transform::polynomial({1.0, 0.0, 1.0});
    CHECK(cubic.derivative(1.0) == doctest::Approx(4.0));
    CHECK(cubic.derivative(0.0) == doctest::Approx(1.0));
    CHECK(point_transform::monomial(3.0).derivative(0.0) == 0.0);
    CHECK(point_transform::monomial(1.0).derivative(0.0) == 1.0);
    CHECK(thrown_code([] { point_transform::monomial(0.5).derivative(0.0); }) == errc::unbounded);
}

TEST_CASE("invert matches direct and oracle values") {
    const auto cubic = point_transform::polynomial({1.0, 0.0, 1.0});
    CHECK(cubic.invert(2.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-10));

    // frozen from the bisection oracle on x + x^3 - 0.1 at 1e-12
    const double expected = 0.099028852405457314;
    const double via_oracle = oracle::bisect(
        [&](double x) { return x + x * x * x - 0.1; }, 0.0, 1.0);
    CHECK(via_oracle == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cubic.invert(0.1, 1e-12) == doctest::Approx(expected).epsilon(1e-10));

    CHECK(point_transform::monomial(3.0).invert(-8.0, 1e-12) ==
          doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("invert reports no_convergence for unreachable tolerances") {
    const auto pt = point_transform::polynomial({0.0, 0.0, 1.0}); // flat plateau at 0
    CHECK(thrown_code([&] { pt.invert(1e-60, 1e-300); }) == errc::no_convergence);
}

TEST_CASE("round trip, monotonicity, odd symmetry, derivative vs finite differences") {
    std::mt19937_64 rng(20240811u);
    std::uniform_real_distribution<double> ux(-10.0, 10.0);
    for (int trial = 0; trial < 60; ++trial) {
        const point_transform pt = random_transform(rng);
        for (int s = 0; s < 25; ++s) {
            const double x = ux(rng);

            // odd symmetry, bit for bit
            CHECK(pt.evaluate(-x) == -pt.evaluate(x));

            // monotone
            const double y = ux(rng);
            if (x < y) CHECK(pt.evaluate(x) <= pt.evaluate(y));

            // round trip away from plateau regions (dW/dx ~ 0 there, so the
            // preimage of a W tolerance band is wide by construction)
            if ((std::fabs(x) > 1e-3 || !pt.degenerate_at_origin()) &&
                pt.derivative(x) >= 0.01) {
                const double w = pt.evaluate(x);
                if (std::isfinite(w) && std::fabs(w) < 1e12) {
                    const double back = pt.invert(w, 1e-12);
                    CHECK(std::fabs(back - x) <
                          std::max(1e-10, 1e-10 * std::fabs(w) / pt.derivative(x)));
                }
            }

            // central finite difference of evaluate, away from 0
            if (std::fabs(x) > 0.1) {
                const double hstep = 1e-5;
                const double fd =
                    (pt.evaluate(x + hstep) - pt.evaluate(x - hstep)) / (2.0 * hstep);
                const double d = pt.derivative(x);
                if (d > 1e-12) CHECK(fd == doctest::Approx(d).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("round trip stays within 1e-10 absolute on [-10, 10]") {
    const auto cubic = point_transform::polynomial({1.0, 0.0, 1.0});
    for (double x = -10.0; x <= 10.0; x += 0.37) {
        const double back = cubic.invert(cubic.evaluate(x), 1e-12);
        CHECK(std::fabs(back - x) < 1e-10);
    }
    const auto mono = point_transform::monomial(2.5);
    for (double x = -10.0; x <= 10.0; x += 0.41) {
        if (std::fabs(x) < 1e-6) continue;
        const double back = mono.invert(mono.evaluate(x), 1e-12);
        CHECK(std::fabs(back - x) < 1e-10);
    }
}
