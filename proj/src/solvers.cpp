#include "ptdiff/solvers.hpp"

#include "ptdiff/spectral.hpp"
#include "ptdiff/tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace ptdiff {

double conserved_measure_exponent(const operator_spec& spec) {
    switch (spec.variant) {
        case laplacian::delta1: return spec.alpha;
        case laplacian::delta2: return 1.0 - spec.alpha;
        case laplacian::delta3: return 1.0 - spec.alpha;
        case laplacian::delta4: return spec.alpha;
    }
    return 0.0;
}

void solve_request::validate() const {
    op.validate();
    if (times.empty()) fail(errc::config_error, "at least one snapshot time is required", "times");
    double prev = -1.0;
    for (double t : times) {
        if (!(t >= 0.0) || !std::isfinite(t))
            fail(errc::config_error, "snapshot times must be finite and non-negative", "times");
        if (!(t > prev)) fail(errc::config_error, "snapshot times must be strictly increasing", "times");
        prev = t;
    }
    if (dt < 0.0) fail(errc::config_error, "dt must be positive (or 0 for the default)", "method.dt");
    if (dt > 0.0) {
        double min_gap = times[0];
        for (std::size_t i = 1; i < times.size(); ++i)
            min_gap = std::min(min_gap, times[i] - times[i - 1]);
        if (min_gap > 0.0 && dt > min_gap)
            fail(errc::config_error, "dt must not exceed the smallest snapshot gap", "method.dt");
    }
}

namespace {

struct conserved_quadrature {
    std::vector<double> weights; // f^e h per node
    double exponent;
};

conserved_quadrature conserved_weights(const grid1d& g, const point_transform& pt, double e) {
    conserved_quadrature q{std::vector<double>(g.n()), e};
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double f = pt.derivative(g.node(i));
        q.weights[i] = (e == 0.0 ? 1.0 : std::pow(f, e)) * g.h();
    }
    return q;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> normalized_ic(const solve_request& req, const std::vector<double>& w) {
    std::vector<double> v = req.ic.realize(req.grid, req.op.transform);
    const double norm = dot(v, w);
    if (!(norm > 0.0)) fail(errc::numerical_failure, "initial density has non-positive mass");
    for (double& x : v) x /= norm;
    require_truncation_safe(v);
    return v;
}

double ic_w_width(const solve_request& req, const std::vector<double>& v,
                  const std::vector<double>& dw_weights) {
    if (req.ic.k != initial_condition::kind::custom) return req.ic.width;
    // second moment in W under dW for sizing the spectral grid
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = req.op.transform.evaluate(req.grid.node(i));
        const double q = v[i] * dw_weights[i];
        m0 += q;
        m1 += q * w;
        m2 += q * w * w;
    }
    const double var = m2 / m0 - (m1 / m0) * (m1 / m0);
    return std::sqrt(std::max(var, 1e-12));
}

} // namespace

// ---------------------------------------------------------------------------
// W-domain closed form
// ---------------------------------------------------------------------------

solve_result solve_w_closed_form(const solve_request& req) {
    req.validate();
    const grid1d& g = req.grid;
    const point_transform& pt = req.op.transform;
    const std::size_t n = g.n();
    const double D = req.op.diffusion;

    // exact W images of the cell faces; the initial density is treated as
    // piecewise constant on these cells, which makes the t -> 0 limit the
    // identity and keeps the kernel quadrature free of positional drift
    std::vector<double> w(n), b(n + 1), cell(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = pt.evaluate(g.node(i));
    for (std::size_t j = 0; j <= n; ++j)
        b[j] = pt.evaluate(g.x_min() + static_cast<double>(j) * g.h());
    for (std::size_t i = 0; i < n; ++i) cell[i] = b[i + 1] - b[i];

    const auto q = conserved_weights(g, pt, 1.0); // dW node weights, f h
    std::vector<double> rho0 = req.ic.realize(g, pt);
    double cell_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) cell_mass += rho0[i] * cell[i];
    if (!(cell_mass > 0.0)) fail(errc::numerical_failure, "initial density has non-positive mass");
    for (double& x : rho0) x /= cell_mass;
    require_truncation_safe(rho0);

    solve_result res;
    res.mass.initial = 1.0;
    std::vector<double> erfs(n + 1);
    for (double t : req.times) {
        density_field snap{g, pt, coordinate::w, measure::dW(), std::vector<double>(n)};
        if (t == 0.0) {
            snap.values = rho0;
        } else {
            const double s = std::sqrt(4.0 * D * t);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j <= n; ++j) erfs[j] = std::erf((b[j] - w[i]) / s);
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    acc += rho0[j] * (erfs[j + 1] - erfs[j]);
                snap.values[i] = 0.5 * acc;
            }
        }
        res.snapshots.push_back(std::move(snap));
    }
    res.mass.final_mass = dot(res.snapshots.back().values, q.weights);
    res.mass.drift = res.mass.final_mass - res.mass.initial;
    res.mass.boundary_leakage = std::fabs(res.mass.drift);
    return res;
}

// ---------------------------------------------------------------------------
// Spectral propagation
// ---------------------------------------------------------------------------

spectral_route pick_spectral_route(const solve_request& req) {
    if (req.route != spectral_route::auto_select) return req.route;
    switch (req.op.variant) {
        case laplacian::delta3:
        case laplacian::delta4:
            return spectral_route::biorthogonal;
        case laplacian::delta1:
        case laplacian::delta2:
            if (req.op.transform.is_monomial() && req.op.alpha == 0.0)
                return spectral_route::bessel;
            fail(errc::no_kernel_available,
                 "delta1/delta2 have explicit kernels only for monomial W with alpha = 0");
    }
    return spectral_route::w_fourier;
}

solve_result solve_spectral(const solve_request& req) {
    req.validate();
    const grid1d& g = req.grid;
    const point_transform& pt = req.op.transform;
    const double D = req.op.diffusion;
    const spectral_route route = pick_spectral_route(req);

    const double e = route == spectral_route::w_fourier ? 1.0 : conserved_measure_exponent(req.op);
    const auto q = conserved_weights(g, pt, e);
    std::vector<double> rho0 = normalized_ic(req, q.weights);

    const auto dwq = conserved_weights(g, pt, 1.0);
    double t_min_pos = 0.0;
    for (double t : req.times)
        if (t > 0.0) { t_min_pos = t; break; }
    const kgrid_mode mode = req.kspec.mode.value_or(route == spectral_route::w_fourier
                                                        ? kgrid_mode::uniform_k
                                                        : kgrid_mode::k_equals_w_of_k);
    const kgrid kg = resolve_kgrid(mode, req.kspec, pt, g, D, t_min_pos,
                                   ic_w_width(req, rho0, dwq.weights));

    density_field ic_field{g, pt, coordinate::x, measure::weighted(e), rho0};
    if (route == spectral_route::w_fourier) {
        ic_field.coord = coordinate::w;
        ic_field.meas = measure::dW();
    }

    spectral_field hat{kg, {}};
    gft_kernel analysis = gft_kernel::phi_tilde;
    bessel_kernel_spec bspec;
    switch (route) {
        case spectral_route::w_fourier:
            hat = wft_forward(ic_field, kg);
            break;
        case spectral_route::biorthogonal:
            if (req.op.variant != laplacian::delta3 && req.op.variant != laplacian::delta4)
                fail(errc::no_kernel_available,
                     "biorthogonal kernels belong to delta3/delta4");
            analysis = req.op.variant == laplacian::delta3 ? gft_kernel::phi_tilde
                                                           : gft_kernel::phi;
            hat = gft_forward(ic_field, analysis, req.op.alpha, kg);
            break;
        case spectral_route::bessel:
            if (!pt.is_monomial()) fail(errc::not_monomial, "Bessel route needs a monomial W");
            if (req.op.alpha != 0.0)
                fail(errc::no_kernel_available, "Bessel kernels are the alpha = 0 family");
            bspec.beta = pt.beta();
            bspec.which = req.op.variant == laplacian::delta1
                              ? bessel_kernel_spec::branch::phi
                              : bessel_kernel_spec::branch::phi_tilde;
            hat = bessel_forward(ic_field, bspec, kg);
            break;
        case spectral_route::auto_select:
            break;
    }

    solve_result res;
    res.mass.initial = 1.0;
    spectral_field prop{kg, std::vector<std::complex<double>>(kg.size())};
    for (double t : req.times) {
        if (t == 0.0) {
            res.snapshots.push_back(ic_field); // identity propagator
            continue;
        }
        for (std::size_t j = 0; j < kg.size(); ++j) {
            const double K = kg.K()[j];
            prop.values[j] = hat.values[j] * std::exp(-K * K * D * t);
        }
        density_field snap{g, pt, coordinate::x, measure::weighted(e), {}};
        switch (route) {
            case spectral_route::w_fourier:
                snap = wft_inverse(prop, g, pt);
                break;
            case spectral_route::biorthogonal:
                snap = gft_inverse(prop, analysis, req.op.alpha, g, pt);
                snap.meas = measure::weighted(e);
                break;
            case spectral_route::bessel:
                snap = bessel_inverse(prop, bspec, g, pt);
                snap.meas = measure::weighted(e);
                break;
            case spectral_route::auto_select:
                break;
        }
        res.snapshots.push_back(std::move(snap));
    }
    res.mass.final_mass = dot(res.snapshots.back().values, q.weights);
    res.mass.drift = res.mass.final_mass - res.mass.initial;
    res.mass.boundary_leakage = std::fabs(res.mass.drift);
    return res;
}

// ---------------------------------------------------------------------------
// Crank-Nicolson finite differences
// ---------------------------------------------------------------------------

namespace {

struct cn_stepper {
    const assembled_operator& op;
    double dt = -1.0;
    std::vector<double> lsub, ldiag, lsuper; // I - (dt/2) A

    explicit cn_stepper(const assembled_operator& a) : op(a) {}

    void set_dt(double new_dt) {
        if (new_dt == dt) return;
        dt = new_dt;
        const std::size_t n = op.diag().size();
        lsub.resize(n);
        ldiag.resize(n);
        lsuper.resize(n);
        const double k = 0.5 * dt;
        for (std::size_t i = 0; i < n; ++i) {
            lsub[i] = -k * op.sub()[i];
            ldiag[i] = 1.0 - k * op.diag()[i];
            lsuper[i] = -k * op.super()[i];
        }
    }

    // one CN step; also accumulates the Dirichlet wall flux via sigma = A^T m
    void step(std::vector<double>& u, const std::vector<double>& sigma, double& leak) const {
        const std::size_t n = u.size();
        const double k = 0.5 * dt;
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            double au = u[i] * op.diag()[i];
            if (i > 0) au += u[i - 1] * op.sub()[i];
            if (i + 1 < n) au += u[i + 1] * op.super()[i];
            rhs[i] = u[i] + k * au;
        }
        std::vector<double> next = thomas_solve(lsub, ldiag, lsuper, rhs);
        double flux = 0.0;
        for (std::size_t i = 0; i < n; ++i) flux += sigma[i] * (u[i] + next[i]);
        leak += k * flux;
        u = std::move(next);
    }
};

void advance_interval(cn_stepper& st, std::vector<double>& u, const std::vector<double>& sigma,
                      double& leak, double gap, double dt_nominal, bool exact_tail) {
    if (gap <= 0.0) return;
    if (exact_tail) {
        // full steps at dt_nominal, then one shortened step onto the target
        double remaining = gap;
        st.set_dt(dt_nominal);
        while (remaining > dt_nominal * (1.0 + 1e-12)) {
            st.step(u, sigma, leak);
            remaining -= dt_nominal;
        }
        if (remaining > 1e-15 * gap) {
            st.set_dt(remaining);
            st.step(u, sigma, leak);
        }
    } else {
        const auto steps = static_cast<std::size_t>(std::ceil(gap / dt_nominal - 1e-12));
        st.set_dt(gap / static_cast<double>(std::max<std::size_t>(steps, 1)));
        for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s)
            st.step(u, sigma, leak);
    }
}

} // namespace

solve_result solve_fd(const solve_request& req) {
    req.validate();
    const grid1d& g = req.grid;
    const point_transform& pt = req.op.transform;
    const std::size_t n = g.n();

    const assembled_operator op = assemble(req.op, g);
    const double e = op.conserved_exponent();
    const auto q = conserved_weights(g, pt, e);
    std::vector<double> u = normalized_ic(req, q.weights);

    // sigma = A^T m is zero on interior columns; what remains is wall flux
    std::vector<double> sigma(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = q.weights[i] * op.diag()[i];
        if (i > 0) s += q.weights[i - 1] * op.super()[i - 1];
        if (i + 1 < n) s += q.weights[i + 1] * op.sub()[i + 1];
        sigma[i] = s;
    }

    cn_stepper main_st(op), half_st(op);
    std::vector<double> u_half = req.accuracy_monitor ? u : std::vector<double>{};

    const double t1 = req.times.front() > 0.0 ? req.times.front() : 1e-4;
    const double dt_first = req.dt > 0.0 ? req.dt : std::min(1e-4, 0.05 * t1);

    solve_result res;
    res.mass.initial = 1.0;
    double leak = 0.0, leak_half = 0.0;
    double t_prev = 0.0;
    double max_drift = 0.0;
    bool first_interval = true;
    for (double t : req.times) {
        const double gap = t - t_prev;
        const bool user_dt = req.dt > 0.0;
        // the documented default on the first interval; later gaps may grow
        // so long runs stay tractable (20+ steps per interval)
        double dt_nominal = dt_first;
        if (!user_dt && !first_interval) dt_nominal = std::max(dt_first, 0.02 * gap);
        first_interval = false;
        advance_interval(main_st, u, sigma, leak, gap, dt_nominal, user_dt);
        if (req.accuracy_monitor) {
            advance_interval(half_st, u_half, sigma, leak_half, gap, 0.5 * dt_nominal, user_dt);
            double diff = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                diff = std::max(diff, std::fabs(u[i] - u_half[i]));
            if (diff > 1e-4)
                fail(errc::step_too_large,
                     "halving dt changes the snapshot at t = " + std::to_string(t) + " by " +
                         std::to_string(diff) + " (max-norm)");
        }
        t_prev = t;
        res.snapshots.push_back(
            density_field{g, pt, coordinate::x, measure::weighted(e), u});
        max_drift = std::max(max_drift, std::fabs(dot(u, q.weights) - 1.0));
    }
    res.mass.final_mass = dot(u, q.weights);
    res.mass.drift = res.mass.final_mass - res.mass.initial;
    res.mass.boundary_leakage = leak;
    return res;
}

solve_result solve(const solve_request& req) {
    switch (req.method) {
        case solve_method::w_closed_form: return solve_w_closed_form(req);
        case solve_method::spectral: return solve_spectral(req);
        case solve_method::finite_difference: return solve_fd(req);
    }
    fail(errc::config_error, "unknown solve method", "method");
}

} // namespace ptdiff
