#include "ptdiff/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptdiff {

namespace {

moment_result central_moment(const density_field& rho, coordinate coord) {
    const std::size_t n = rho.grid.n();
    moment_result r;
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rho.grid.node(i);
        const double xi = coord == coordinate::x ? x : rho.transform.evaluate(x);
        const double wq = coord == coordinate::x
                              ? rho.grid.h()
                              : rho.transform.derivative(x) * rho.grid.h();
        const double q = rho.values[i] * wq;
        r.norm += q;
        m1 += q * xi;
        m2 += q * xi * xi;
    }
    if (!(r.norm > 0.0)) fail(errc::numerical_failure, "density has non-positive mass");
    r.mean = m1 / r.norm;
    r.msd = m2 / r.norm - r.mean * r.mean;
    return r;
}

} // namespace

moment_result msd_with_norm(const density_field& rho, coordinate coord) {
    return central_moment(rho, coord);
}

double msd(const density_field& rho, coordinate coord) {
    const moment_result r = central_moment(rho, coord);
    if (std::fabs(r.norm - 1.0) >= 1e-6)
        fail(errc::normalization_drift,
             "density is not normalized under the requested coordinate's measure (norm = " +
                 std::to_string(r.norm) + ")");
    return r.msd;
}

msd_series compute_msd_series(const std::vector<density_field>& snapshots,
                              const std::vector<double>& times) {
    msd_series s;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        const auto mx = msd_with_norm(snapshots[i], coordinate::x);
        const auto mw = msd_with_norm(snapshots[i], coordinate::w);
        s.times.push_back(times[i]);
        s.msd_x.push_back(mx.msd);
        s.msd_w.push_back(mw.msd);
        s.norm_x.push_back(mx.norm);
        s.norm_w.push_back(mw.norm);
        s.norm_drift.push_back(snapshots[i].mass() - 1.0);
    }
    return s;
}

namespace {

struct ols_fit {
    double slope = 0.0, intercept = 0.0, r2 = 1.0, ssr = 0.0;
    std::size_t n = 0;
};

ols_fit ols_loglog(const std::vector<double>& ts, const std::vector<double>& ys,
                   std::size_t lo, std::size_t hi) {
    ols_fit f;
    f.n = hi - lo;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        sx += std::log(ts[i]);
        sy += std::log(ys[i]);
    }
    const double mx = sx / static_cast<double>(f.n), my = sy / static_cast<double>(f.n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double dx = std::log(ts[i]) - mx, dy = std::log(ys[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) fail(errc::window_too_sparse, "degenerate time window");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.ssr = std::max(0.0, syy - f.slope * sxy);
    f.r2 = syy > 0.0 ? 1.0 - f.ssr / syy : 1.0;
    return f;
}

const std::vector<double>& pick(const msd_series& s, coordinate c) {
    return c == coordinate::x ? s.msd_x : s.msd_w;
}

scaling_fit to_fit(const ols_fit& o, double t_lo, double t_hi) {
    return {o.slope, o.intercept, t_lo, t_hi, o.r2, o.n};
}

} // namespace

scaling_fit fit_scaling(const msd_series& series, coordinate coord, double t_lo, double t_hi) {
    const auto& ys = pick(series, coord);
    std::size_t lo = series.times.size(), hi = 0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        if (series.times[i] >= t_lo && series.times[i] <= t_hi) {
            lo = std::min(lo, i);
            hi = std::max(hi, i + 1);
        }
    }
    if (lo >= hi || hi - lo < 5)
        fail(errc::window_too_sparse, "fit window holds fewer than 5 series points");
    for (std::size_t i = lo; i < hi; ++i)
        if (!(ys[i] > 0.0) || !(series.times[i] > 0.0))
            fail(errc::window_too_sparse, "fit window contains non-positive samples");
    return to_fit(ols_loglog(series.times, ys, lo, hi), series.times[lo], series.times[hi - 1]);
}

const char* regime_name(regime r) {
    switch (r) {
        case regime::ballistic: return "Ballistic";
        case regime::super_diffusive: return "SuperDiffusive";
        case regime::normal: return "Normal";
        case regime::sub_diffusive: return "SubDiffusive";
    }
    return "?";
}

regime classify_regime(double exponent) {
    if (!(exponent > 0.0))
        fail(errc::non_positive_exponent, "scaling exponent must be positive");
    const double beta = 1.0 / exponent;
    if (std::fabs(beta - 1.0) <= 0.02) return regime::normal;
    if (beta < 0.25) return regime::ballistic;
    if (beta < 1.0) return regime::super_diffusive;
    return regime::sub_diffusive;
}

crossover_result detect_crossover(const msd_series& series, coordinate coord) {
    const auto& ts = series.times;
    const auto& ys = pick(series, coord);
    const std::size_t n = ts.size();
    if (n < 10 || !(ts.back() / ts.front() >= 1e3))
        fail(errc::span_too_short, "crossover detection needs >= 3 decades of t and 10 points");
    for (std::size_t i = 0; i < n; ++i)
        if (!(ys[i] > 0.0)) fail(errc::span_too_short, "series contains non-positive samples");

    const ols_fit whole = ols_loglog(ts, ys, 0, n);
    double best_ssr = std::numeric_limits<double>::max();
    std::size_t best_k = 0;
    ols_fit best_l, best_r;
    for (std::size_t k = 5; k + 5 <= n; ++k) {
        const ols_fit l = ols_loglog(ts, ys, 0, k);
        const ols_fit r = ols_loglog(ts, ys, k, n);
        if (l.ssr + r.ssr < best_ssr) {
            best_ssr = l.ssr + r.ssr;
            best_k = k;
            best_l = l;
            best_r = r;
        }
    }
    crossover_result out;
    out.early = to_fit(best_l, ts[0], ts[best_k - 1]);
    out.late = to_fit(best_r, ts[best_k], ts[n - 1]);
    if (best_l.slope != best_r.slope) {
        out.knee_time =
            std::exp((best_r.intercept - best_l.intercept) / (best_l.slope - best_r.slope));
    } else {
        out.knee_time = ts[best_k];
    }
    const double improvement =
        whole.ssr > 1e-20 ? (whole.ssr - best_ssr) / whole.ssr : 0.0;
    out.no_knee = improvement < 0.01;
    return out;
}

osp_map osp_to_pt(double c, double g, double D) {
    if (!(c > 0.0)) fail(errc::non_positive_beta, "the dimension c must be positive");
    if (!(D > 0.0)) fail(errc::config_error, "D must be positive", "D");
    const double beta = 0.5 * g - c + 2.0;
    if (!(beta > 0.0))
        fail(errc::non_positive_beta,
             "beta = g/2 - c + 2 = " + std::to_string(beta) +
                 " is not positive: this (c, g) pair has no point-transformation representative");
    osp_map m;
    m.transform = point_transform::monomial(beta);
    m.beta = beta;
    m.effective_scale = c * c * beta * beta * D;
    m.composite_exponent = beta * c;
    return m;
}

double pt_to_osp(double beta, double c) {
    if (!(beta > 0.0)) fail(errc::non_positive_beta, "beta must be positive");
    if (!(c > 0.0)) fail(errc::non_positive_beta, "c must be positive");
    return 2.0 * (beta + c - 2.0);
}

} // namespace ptdiff
