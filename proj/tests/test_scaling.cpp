#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptdiff/scaling.hpp"
#include "ptdiff/solvers.hpp"

#include <cmath>

using namespace ptdiff;

namespace {

const point_transform identity_w = point_transform::monomial(1.0);

density_field gaussian_density(double var) {
    grid1d g(-20.0, 20.0, 4000);
    density_field rho{g, identity_w, coordinate::x, measure::dx(), std::vector<double>(g.n())};
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double x = g.node(i);
        rho.values[i] = std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * M_PI * var);
    }
    return rho;
}

msd_series synthetic_series(const std::vector<double>& ts,
                            const std::function<double(double)>& msd_of_t) {
    msd_series s;
    for (double t : ts) {
        s.times.push_back(t);
        s.msd_x.push_back(msd_of_t(t));
        s.msd_w.push_back(msd_of_t(t));
        s.norm_x.push_back(1.0);
        s.norm_w.push_back(1.0);
        s.norm_drift.push_back(0.0);
    }
    return s;
}

} // namespace

TEST_CASE("msd of the heat-kernel Gaussian at D = 1, t = 1 is 2") {
    const auto rho = gaussian_density(2.0);
    CHECK(msd(rho, coordinate::x) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(msd(rho, coordinate::w) == doctest::Approx(2.0).epsilon(1e-10)); // identity W
    CHECK(std::fabs(msd_with_norm(rho, coordinate::x).mean) < 1e-10);
}

TEST_CASE("stretched-Gaussian moments match the Gamma-function closed form") {
    // (4Dt)^(1/beta) Gamma(3/(2 beta)) / Gamma(1/(2 beta)), frozen from the
    // analytic oracle: beta = 1 -> 0.5, beta = 2 -> 0.33798912003364236
    for (double beta : {1.0, 2.0}) {
        grid1d g(-12.0, 12.0, 12000);
        density_field rho{g, identity_w, coordinate::x, measure::dx(),
                          std::vector<double>(g.n())};
        const double fourDt = 4.0;
        double norm = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) {
            const double x = g.node(i);
            rho.values[i] = std::exp(-std::pow(std::fabs(x), 2.0 * beta) / fourDt);
            norm += rho.values[i] * g.h();
        }
        for (auto& v : rho.values) v /= norm;
        const double coeff = beta == 1.0 ? 0.5 : 0.33798912003364236;
        CHECK(msd(rho, coordinate::x) ==
              doctest::Approx(std::pow(fourDt, 1.0 / beta) * coeff).epsilon(1e-8));
    }
}

TEST_CASE("normalization drift below 1e-6 is repaired, above it is an error") {
    auto rho = gaussian_density(1.0);
    for (auto& v : rho.values) v *= 1.0 + 5e-7;
    CHECK(msd(rho, coordinate::x) == doctest::Approx(1.0).epsilon(1e-8));
    for (auto& v : rho.values) v *= 1.5;
    CHECK_THROWS_AS(msd(rho, coordinate::x), ptdiff::error);
    CHECK(msd_with_norm(rho, coordinate::x).norm == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("fit recovers exact power laws to near machine precision") {
    const auto ts = oracle::logspace(0.01, 10.0, 25);
    const auto s1 = synthetic_series(ts, [](double t) { return 2.0 * t; });
    const auto f1 = fit_scaling(s1, coordinate::x, 0.01, 10.0);
    CHECK(f1.exponent == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f1.log_prefactor == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(f1.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    const auto s2 = synthetic_series(ts, [](double t) { return 5.0 * std::cbrt(t); });
    const auto f2 = fit_scaling(s2, coordinate::w, 0.01, 10.0);
    CHECK(f2.exponent == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // window independence on exact laws
    const auto f3 = fit_scaling(s2, coordinate::w, 0.05, 2.0);
    CHECK(f3.exponent == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("sparse windows are rejected") {
    const auto ts = oracle::logspace(0.01, 10.0, 25);
    const auto s = synthetic_series(ts, [](double t) { return t; });
    CHECK_THROWS_AS(fit_scaling(s, coordinate::x, 9.0, 10.0), ptdiff::error);
}

TEST_CASE("regime classification follows the stated beta thresholds") {
    CHECK(classify_regime(1.0) == regime::normal);
    CHECK(classify_regime(3.0) == regime::super_diffusive);  // beta = 1/3
    CHECK(classify_regime(1.0 / 3.0) == regime::sub_diffusive); // beta = 3
    CHECK(classify_regime(4.0) == regime::super_diffusive);  // beta = 1/4 closed on the left
    CHECK(classify_regime(5.0) == regime::ballistic);        // beta = 1/5
    CHECK(classify_regime(0.9999) == regime::normal);        // inside the 0.02 band
    CHECK_THROWS_AS(classify_regime(0.0), ptdiff::error);
    CHECK_THROWS_AS(classify_regime(-1.0), ptdiff::error);

    // argmax stability: 1e-6 nudges never flip a class away from boundaries
    for (double e : {0.4, 0.9, 1.0, 1.6, 3.3}) {
        CHECK(classify_regime(e * (1.0 + 1e-6)) == classify_regime(e));
        CHECK(classify_regime(e * (1.0 - 1e-6)) == classify_regime(e));
    }
}

TEST_CASE("crossover detection on a synthetic kneed series") {
    std::vector<double> ts = oracle::logspace(1e-3, 10.0, 53);
    const auto s = synthetic_series(ts, [](double t) {
        return t <= 0.1 ? 2.0 * t : 0.2 * std::cbrt(t / 0.1);
    });
    const auto cr = detect_crossover(s, coordinate::x);
    CHECK(cr.early.exponent == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(cr.late.exponent == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(cr.knee_time == doctest::Approx(0.1).epsilon(0.05));
    CHECK(!cr.no_knee);
}

TEST_CASE("a pure power law raises the no-knee flag") {
    std::vector<double> ts = oracle::logspace(1e-3, 10.0, 40);
    const auto s = synthetic_series(ts, [](double t) { return 3.0 * std::sqrt(t); });
    const auto cr = detect_crossover(s, coordinate::x);
    CHECK(cr.no_knee);
    CHECK(cr.early.exponent == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(cr.late.exponent == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("short spans are rejected") {
    std::vector<double> ts = oracle::logspace(0.1, 10.0, 20);
    const auto s = synthetic_series(ts, [](double t) { return t; });
    CHECK_THROWS_AS(detect_crossover(s, coordinate::x), ptdiff::error);
}

TEST_CASE("OSP parameter map") {
    const auto m1 = osp_to_pt(1.0, 0.0, 1.0);
    CHECK(m1.beta == 1.0);
    CHECK(m1.effective_scale == 1.0);

    const auto m2 = osp_to_pt(2.0, 2.0, 1.0);
    CHECK(m2.beta == 1.0);
    CHECK(m2.effective_scale == 4.0);
    CHECK(m2.composite_exponent == 2.0);

    try {
        osp_to_pt(3.0, 2.0, 1.0);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::non_positive_beta);
    }

    CHECK(pt_to_osp(1.0, 1.0) == 0.0);
    CHECK(pt_to_osp(2.0, 2.0) == 4.0);
    CHECK(pt_to_osp(3.0, 1.0) == 4.0);
}

TEST_CASE("OSP round trip is exact on representative values and tight in general") {
    for (double c : {0.5, 1.0, 2.0, 3.0}) {
        for (double g : {0.0, 1.0, 2.0, 4.0, 6.0}) {
            const double beta = 0.5 * g - c + 2.0;
            if (!(beta > 0.0)) continue;
            const auto m = osp_to_pt(c, g, 1.0);
            CHECK(pt_to_osp(m.beta, c) == g);
        }
    }
    for (double c = 0.31; c < 3.0; c += 0.37) {
        for (double g = 0.13; g < 5.0; g += 0.53) {
            const double beta = 0.5 * g - c + 2.0;
            if (!(beta > 0.1)) continue;
            const auto m = osp_to_pt(c, g, 1.0);
            CHECK(pt_to_osp(m.beta, c) == doctest::Approx(g).epsilon(1e-14));
        }
    }
}

TEST_CASE("dx normalization of a monomial run decays as t^(-1/(2 beta))") {
    const double beta = 2.0;
    solve_request req;
    req.op = {laplacian::delta3, 0.0, point_transform::monomial(beta), 1.0};
    req.grid = grid1d(-8.0, 8.0, 4000);
    req.ic = initial_condition::gaussian_in_w(0.022360679774997897);
    for (double t = 0.5; t <= 50.0001; t *= std::pow(10.0, 0.2)) req.times.push_back(t);
    req.method = solve_method::w_closed_form;
    const auto res = solve(req);

    // peak of the dx-normalized density per snapshot
    std::vector<double> lt, lp;
    for (std::size_t s = 0; s < req.times.size(); ++s) {
        const auto m = msd_with_norm(res.snapshots[s], coordinate::x);
        double peak = 0.0;
        for (double v : res.snapshots[s].values) peak = std::max(peak, v);
        lt.push_back(std::log(req.times[s]));
        lp.push_back(std::log(peak / m.norm));
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(lt.size());
    for (std::size_t i = 0; i < lt.size(); ++i) {
        sx += lt[i];
        sy += lp[i];
        sxx += lt[i] * lt[i];
        sxy += lt[i] * lp[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-1.0 / (2.0 * beta)).epsilon(0.08)); // +/- 0.02 absolute
}

TEST_CASE("monomial runs: W-exponent 1, x-exponent 1/beta") {
    const double beta = 2.0;
    solve_request req;
    req.op = {laplacian::delta3, 0.0, point_transform::monomial(beta), 1.0};
    req.grid = grid1d(-12.0, 12.0, 4000);
    req.ic = initial_condition::gaussian_in_w(0.022360679774997897);
    for (double t = 1.0; t <= 100.0001; t *= std::pow(10.0, 0.125)) req.times.push_back(t);
    req.method = solve_method::finite_difference;
    const auto res = solve(req);
    const auto series = compute_msd_series(res.snapshots, req.times);
    const auto fw = fit_scaling(series, coordinate::w, 1.0, 100.0);
    const auto fx = fit_scaling(series, coordinate::x, 1.0, 100.0);
    CHECK(std::fabs(fw.exponent - 1.0) < 0.02);
    CHECK(std::fabs(fx.exponent - 1.0 / beta) < 0.05);
}
