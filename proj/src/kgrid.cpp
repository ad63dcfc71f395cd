#include "ptdiff/kgrid.hpp"

#include <algorithm>
#include <cmath>

namespace ptdiff {

kgrid kgrid::build(kgrid_mode mode, double k_max, std::size_t n_k, const point_transform* pt) {
    if (!(k_max > 0.0)) fail(errc::config_error, "k_max must be positive", "kgrid.k_max");
    if (n_k < 4) fail(errc::config_error, "n_k must be at least 4", "kgrid.n_k");

    kgrid kg;
    kg.mode_ = mode;
    kg.k_.resize(n_k);
    kg.K_.resize(n_k);
    kg.dK_.resize(n_k);
    kg.dk_.assign(n_k, 2.0 * k_max / static_cast<double>(n_k));
    const double dk = kg.dk_[0];
    double K_face_prev =
        mode == kgrid_mode::uniform_k ? -k_max : pt->evaluate(-k_max);
    for (std::size_t j = 0; j < n_k; ++j) {
        const double kj = -k_max + (static_cast<double>(j) + 0.5) * dk;
        const double k_face = -k_max + (static_cast<double>(j) + 1.0) * dk;
        kg.k_[j] = kj;
        if (mode == kgrid_mode::uniform_k) {
            kg.K_[j] = kj;
            kg.dK_[j] = dk;
            K_face_prev = k_face;
        } else {
            kg.K_[j] = pt->evaluate(kj);
            const double K_face = pt->evaluate(k_face);
            kg.dK_[j] = K_face - K_face_prev;
            K_face_prev = K_face;
        }
    }
    return kg;
}

kgrid kgrid::uniform(double k_max, std::size_t n_k) {
    return build(kgrid_mode::uniform_k, k_max, n_k, nullptr);
}

kgrid kgrid::w_of_k(double k_max, std::size_t n_k, const point_transform& pt) {
    return build(kgrid_mode::k_equals_w_of_k, k_max, n_k, &pt);
}

kgrid resolve_kgrid(kgrid_mode mode, const kgrid_spec& spec, const point_transform& pt,
                    const grid1d& g, double diffusion, double t_min, double ic_width_w) {
    double k_max = spec.k_max;
    std::size_t n_k = spec.n_k;
    const double w_span = pt.evaluate(g.x_max()) - pt.evaluate(g.x_min());

    if (k_max <= 0.0) {
        // exp(-K^2 (sigma^2/2 + D t_min)) below ~1e-16
        const double damp = 0.5 * ic_width_w * ic_width_w + diffusion * std::max(t_min, 0.0);
        const double K_max = std::sqrt(38.0 / std::max(damp, 1e-300));
        k_max = mode == kgrid_mode::k_equals_w_of_k ? pt.invert(K_max) : K_max;
    }
    if (n_k == 0) {
        // alias period 2 pi / dK_max must clear the W span of the grid
        const double dK_max = 2.0 * M_PI / (1.15 * w_span);
        double dk = dK_max;
        if (mode == kgrid_mode::k_equals_w_of_k) {
            const double f_edge = pt.derivative(k_max);
            dk = dK_max / std::max(f_edge, 1e-300);
        }
        n_k = static_cast<std::size_t>(std::ceil(2.0 * k_max / dk));
        if (n_k % 2 != 0) ++n_k;
        n_k = std::max<std::size_t>(n_k, 16);
    }
    return mode == kgrid_mode::k_equals_w_of_k ? kgrid::w_of_k(k_max, n_k, pt)
                                               : kgrid::uniform(k_max, n_k);
}

} // namespace ptdiff
