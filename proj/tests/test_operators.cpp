#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptdiff/operators.hpp"
#include "ptdiff/tridiag.hpp"

#include <cmath>
#include <random>

using namespace ptdiff;

namespace {

const point_transform identity_w = point_transform::monomial(1.0);
const point_transform cubic_w = point_transform::polynomial({1.0, 0.0, 1.0});
const point_transform mono3_w = point_transform::monomial(3.0);

std::vector<double> dense_symmetrized(const assembled_operator& op) {
    const std::size_t n = op.grid().n();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = op.diag()[i];
        if (i + 1 < n) {
            const double off = std::sqrt(op.super()[i] * op.sub()[i + 1]);
            a[i * n + i + 1] = off;
            a[(i + 1) * n + i] = off;
        }
    }
    return a;
}

} // namespace

TEST_CASE("cell-centered grids match the worked examples") {
    grid1d g(-2.0, 2.0, 4);
    CHECK(g.h() == 1.0);
    CHECK(g.node(0) == doctest::Approx(-1.5));
    CHECK(g.node(1) == doctest::Approx(-0.5));
    CHECK(g.node(2) == doctest::Approx(0.5));
    CHECK(g.node(3) == doctest::Approx(1.5));

    grid1d big(-10.0, 10.0, 4000);
    CHECK(big.h() == doctest::Approx(0.005));
    double closest = 1e9;
    for (std::size_t i = 0; i < big.n(); ++i) closest = std::min(closest, std::fabs(big.node(i)));
    CHECK(closest > 1e-3); // cell-centering keeps every node off x = 0

    CHECK_NOTHROW(grid1d(0.0, 1.0, 7)); // asymmetric domains allow odd n

    CHECK_THROWS_AS(grid1d(2.0, -2.0, 16), ptdiff::error);
    try {
        grid1d bad(-1.0, 1.0, 9);
    } catch (const error& e) {
        CHECK(e.code() == errc::odd_node_count_on_symmetric_domain);
    }
}

TEST_CASE("delta3 at alpha 0 with identity W is the classic three-point stencil") {
    grid1d g(-2.0, 2.0, 8);
    const double d = 2.5;
    auto op = assemble({laplacian::delta3, 0.0, identity_w, d}, g);
    const double inv_h2 = 1.0 / (g.h() * g.h());
    for (std::size_t i = 1; i + 1 < g.n(); ++i) {
        CHECK(op.sub()[i] == doctest::Approx(d * inv_h2).epsilon(1e-14));
        CHECK(op.diag()[i] == doctest::Approx(-2.0 * d * inv_h2).epsilon(1e-14));
        CHECK(op.super()[i] == doctest::Approx(d * inv_h2).epsilon(1e-14));
    }
}

TEST_CASE("delta3 alpha 0 reproduces the analytic image of sin(W) to second order") {
    // The W-space wavelength must stay resolved where dW/dx is large, so the
    // domain is (-2, 2); on (-10, 10) the edge cells span ~1.5 radians of W
    // and no second-order stencil can track sin(W) there.
    double errs[2];
    std::size_t idx = 0;
    for (std::size_t n : {4000u, 8000u}) {
        grid1d g(-2.0, 2.0, n);
        auto op = assemble({laplacian::delta3, 0.0, cubic_w, 1.0}, g);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = std::sin(cubic_w.evaluate(g.node(i)));
        const auto img = op.apply(u);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i)
            worst = std::max(worst, std::fabs(img[i] + u[i]));
        errs[idx++] = worst;
    }
    CHECK(errs[0] < 5e-4);
    CHECK(errs[0] / errs[1] > 3.6);
    CHECK(errs[0] / errs[1] < 4.4);
}

TEST_CASE("delta1 for W = sgn(x)|x|^3: symmetric band with non-positive row sums") {
    grid1d g(-6.0, 6.0, 256);
    auto op = assemble({laplacian::delta1, 0.0, mono3_w, 1.0}, g);
    for (std::size_t i = 0; i + 1 < g.n(); ++i)
        CHECK(op.super()[i] == op.sub()[i + 1]); // bit-for-bit
    const std::vector<double> ones(g.n(), 1.0);
    const auto row_sums = op.apply(ones);
    for (double s : row_sums) CHECK(s <= 1e-12 * op.band_max());
}

TEST_CASE("adjoint residuals: exact symmetry, measure self-adjointness, dx pairing") {
    grid1d g(-10.0, 10.0, 200);
    for (double a : {0.0, 0.3, 0.5, 1.0}) {
        auto op1 = assemble({laplacian::delta1, a, cubic_w, 1.0}, g);
        auto op2 = assemble({laplacian::delta2, a, cubic_w, 1.0}, g);
        CHECK(adjoint_residual(op1) == 0.0);
        CHECK(adjoint_residual(op2) == 0.0);

        auto op3 = assemble({laplacian::delta3, a, cubic_w, 1.0}, g);
        auto op4 = assemble({laplacian::delta4, a, cubic_w, 1.0}, g);
        CHECK(adjoint_residual(op3) < 1e-12);
        CHECK(adjoint_residual(op4) < 1e-12);
        CHECK(adjoint_residual(op3, op4) < 1e-12);
    }
    // alpha = 1/2: the delta3 measure collapses to dx and symmetry is exact
    auto op3h = assemble({laplacian::delta3, 0.5, cubic_w, 1.0}, g);
    CHECK(adjoint_residual(op3h) < 1e-14);
}

TEST_CASE("discrete pairing <u, delta3 v>_dx = <delta4 u, v>_dx for random vectors") {
    grid1d g(-8.0, 8.0, 160);
    auto op3 = assemble({laplacian::delta3, 0.3, cubic_w, 1.3}, g);
    auto op4 = assemble({laplacian::delta4, 0.3, cubic_w, 1.3}, g);
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> u(g.n()), v(g.n());
        for (auto& x : u) x = dist(rng);
        for (auto& x : v) x = dist(rng);
        const auto a3v = op3.apply(v);
        const auto a4u = op4.apply(u);
        double lhs = 0.0, rhs = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) {
            lhs += u[i] * a3v[i] * g.h();
            rhs += a4u[i] * v[i] * g.h();
            scale += std::fabs(u[i] * a3v[i]) * g.h();
        }
        CHECK(std::fabs(lhs - rhs) < 1e-12 * scale);
    }
}

TEST_CASE("interior rows annihilate the constant for delta3 at alpha 0") {
    grid1d g(-10.0, 10.0, 300);
    auto op = assemble({laplacian::delta3, 0.0, cubic_w, 1.0}, g);
    const std::vector<double> ones(g.n(), 1.0);
    const auto img = op.apply(ones);
    for (std::size_t i = 1; i + 1 < g.n(); ++i)
        CHECK(std::fabs(img[i]) < 1e-12 * op.band_max());
}

TEST_CASE("spectrum checks: all variants negative semi-definite, matching a dense oracle") {
    grid1d g64(-10.0, 10.0, 64);
    auto classic = assemble({laplacian::delta1, 0.0, identity_w, 1.0}, g64);
    CHECK(spectrum_check(classic) <= 0.0);

    grid1d g(-10.0, 10.0, 256);
    auto opc = assemble({laplacian::delta3, 0.0, cubic_w, 1.0}, g);
    CHECK(spectrum_check(opc) <= 1e-10);

    grid1d g3(-6.0, 6.0, 256);
    auto opm = assemble({laplacian::delta1, 0.0, mono3_w, 1.0}, g3);
    CHECK(spectrum_check(opm) <= 1e-10);

    // independent dense Jacobi eigensolve on the symmetrized band
    grid1d gs(-8.0, 8.0, 96);
    for (auto variant : {laplacian::delta1, laplacian::delta2, laplacian::delta3,
                         laplacian::delta4}) {
        auto op = assemble({variant, 0.3, cubic_w, 1.0}, gs);
        const auto ev = oracle::jacobi_eigenvalues(dense_symmetrized(op), gs.n());
        double ev_max = ev[0];
        for (double e : ev) ev_max = std::max(ev_max, e);
        CHECK(ev_max <= 1e-10 * op.band_max());
        CHECK(spectrum_check(op) == doctest::Approx(ev_max).epsilon(1e-6));
    }
}

TEST_CASE("singular weights are reported where the variant needs them") {
    // a grid with a node exactly at x = 0 and a transform with dW/dx(0) = 0
    grid1d g(-0.25, 3.75, 8);
    CHECK(g.node(0) == doctest::Approx(0.0));
    const auto mono2 = point_transform::monomial(2.0);
    try {
        assemble({laplacian::delta3, 0.0, mono2, 1.0}, g);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::singular_weight);
    }
    // delta1 at alpha = 0 needs no inverse powers at nodes; it stays finite
    CHECK_NOTHROW(assemble({laplacian::delta1, 0.0, mono2, 1.0}, g));
}

TEST_CASE("operator spec validation names the offending field") {
    grid1d g(-2.0, 2.0, 16);
    try {
        assemble({laplacian::delta3, 1.5, identity_w, 1.0}, g);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::config_error);
        CHECK(e.field() == "operator.alpha");
    }
}

TEST_CASE("measure weights match each variant's self-adjointness measure") {
    grid1d g(-4.0, 4.0, 32);
    const double a = 0.3;
    auto op1 = assemble({laplacian::delta1, a, cubic_w, 1.0}, g);
    auto op3 = assemble({laplacian::delta3, a, cubic_w, 1.0}, g);
    auto op4 = assemble({laplacian::delta4, a, cubic_w, 1.0}, g);
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double f = cubic_w.derivative(g.node(i));
        CHECK(op1.measure_weights()[i] == doctest::Approx(g.h()));
        CHECK(op3.measure_weights()[i] ==
              doctest::Approx(g.h() * std::pow(f, 1.0 - 2.0 * a)).epsilon(1e-14));
        CHECK(op4.measure_weights()[i] ==
              doctest::Approx(g.h() * std::pow(f, 2.0 * a - 1.0)).epsilon(1e-14));
    }
}

TEST_CASE("thomas solver agrees with direct elimination on random tridiagonal systems") {
    std::mt19937_64 rng(11u);
    std::uniform_real_distribution<double> dist(0.1, 1.0);
    const std::size_t n = 40;
    std::vector<double> sub(n), diag(n), super(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        sub[i] = -dist(rng);
        super[i] = -dist(rng);
        diag[i] = 2.5 + dist(rng); // diagonally dominant
        x[i] = dist(rng) - 0.5;
    }
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = diag[i] * x[i];
        if (i > 0) rhs[i] += sub[i] * x[i - 1];
        if (i + 1 < n) rhs[i] += super[i] * x[i + 1];
    }
    const auto got = thomas_solve(sub, diag, super, rhs);
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(x[i]).epsilon(1e-12));
}
