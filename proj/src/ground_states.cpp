#include "ptdiff/ground_states.hpp"

#include <algorithm>
#include <cmath>

namespace ptdiff {

ground_state build_ground_state(gs_family family, double alpha, const point_transform& pt,
                                const grid1d& g) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        fail(errc::config_error, "alpha must lie in [0, 1]", "operator.alpha");
    const double p = family == gs_family::h1h3 ? alpha : 1.0 - alpha;
    ground_state gs{family, alpha, pt, g, std::vector<double>(g.n())};
    double norm = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double x = g.node(i);
        const double w = pt.evaluate(x);
        const double f = pt.derivative(x);
        const double amp = p == 0.0 ? 1.0 : std::pow(f, p);
        if (!std::isfinite(amp))
            fail(errc::singular_weight, "dW/dx power is non-finite at a grid node");
        gs.samples[i] = amp * std::exp(-0.5 * w * w);
        norm += gs.samples[i] * g.h();
    }
    if (!(norm > 0.0)) fail(errc::singular_weight, "ground state has zero mass on this grid");
    for (double& s : gs.samples) s /= norm;
    return gs;
}

double annihilation_residual(const ground_state& gs, std::size_t skip_center_cells) {
    const grid1d& g = gs.grid;
    const point_transform& pt = gs.transform;
    const std::size_t n = g.n();
    const double p = gs.family == gs_family::h1h3 ? gs.alpha : 1.0 - gs.alpha;

    std::vector<double> u(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.node(i);
        w[i] = pt.evaluate(x);
        const double f = pt.derivative(x);
        u[i] = gs.samples[i] * (p == 0.0 ? 1.0 : std::pow(f, -p));
    }

    double smax = 0.0;
    for (double s : gs.samples) smax = std::max(smax, std::fabs(s));

    const double x_cut =
        skip_center_cells == 0 ? -1.0 : static_cast<double>(skip_center_cells) * g.h();
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) { // face between nodes j and j+1
        const double xf = g.face(j);
        if (std::fabs(xf) < x_cut) continue;
        const double dw = w[j + 1] - w[j];
        const double wbar = 0.5 * (w[j] + w[j + 1]);
        const double ubar = 0.5 * (u[j] + u[j + 1]);
        const double inner = (u[j + 1] - u[j]) / dw + wbar * ubar;
        const double amp = p == 0.0 ? 1.0 : std::pow(pt.derivative(xf), p);
        worst = std::max(worst, std::fabs(amp * inner));
    }
    return worst / smax;
}

std::size_t count_local_maxima(const std::vector<double>& v) {
    // compress plateaus, then count strict interior peaks
    std::vector<double> c;
    c.reserve(v.size());
    for (double x : v)
        if (c.empty() || x != c.back()) c.push_back(x);
    std::size_t modes = 0;
    for (std::size_t i = 1; i + 1 < c.size(); ++i)
        if (c[i] > c[i - 1] && c[i] > c[i + 1]) ++modes;
    return modes;
}

std::size_t count_modes(const ground_state& gs) { return count_local_maxima(gs.samples); }

} // namespace ptdiff
