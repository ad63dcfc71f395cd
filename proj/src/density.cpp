#include "ptdiff/density.hpp"

#include <cmath>

namespace ptdiff {

std::vector<double> density_field::weights(measure m) const {
    std::vector<double> w(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double f = transform.derivative(grid.node(i));
        w[i] = (m.f_exponent == 0.0 ? 1.0 : std::pow(f, m.f_exponent)) * grid.h();
    }
    return w;
}

double density_field::mass() const {
    const auto w = weights(meas);
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * w[i];
    return s;
}

initial_condition initial_condition::gaussian_in_w(double width) {
    if (!(width > 0.0)) fail(errc::config_error, "initial width must be positive", "initial.width");
    initial_condition ic;
    ic.k = kind::gaussian_in_w;
    ic.width = width;
    return ic;
}

initial_condition initial_condition::delta_at(double center_x, double width) {
    if (!(width > 0.0)) fail(errc::config_error, "initial width must be positive", "initial.width");
    initial_condition ic;
    ic.k = kind::delta_at;
    ic.center = center_x;
    ic.width = width;
    return ic;
}

initial_condition initial_condition::custom(std::function<double(double)> f) {
    initial_condition ic;
    ic.k = kind::custom;
    ic.sampler = std::move(f);
    return ic;
}

std::vector<double> initial_condition::realize(const grid1d& g, const point_transform& pt) const {
    std::vector<double> v(g.n());
    switch (k) {
        case kind::gaussian_in_w: {
            const double inv2s2 = 1.0 / (2.0 * width * width);
            for (std::size_t i = 0; i < g.n(); ++i) {
                const double w = pt.evaluate(g.node(i));
                v[i] = std::exp(-w * w * inv2s2);
            }
            break;
        }
        case kind::delta_at: {
            const double w0 = pt.evaluate(center);
            const double inv2s2 = 1.0 / (2.0 * width * width);
            for (std::size_t i = 0; i < g.n(); ++i) {
                const double dw = pt.evaluate(g.node(i)) - w0;
                v[i] = std::exp(-dw * dw * inv2s2);
            }
            break;
        }
        case kind::custom:
            for (std::size_t i = 0; i < g.n(); ++i) v[i] = sampler(g.node(i));
            break;
    }
    return v;
}

} // namespace ptdiff
