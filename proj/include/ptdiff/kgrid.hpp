#ifndef PTDIFF_KGRID_HPP
#define PTDIFF_KGRID_HPP

#include "ptdiff/grid.hpp"
#include "ptdiff/point_transform.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace ptdiff {

enum class kgrid_mode { uniform_k, k_equals_w_of_k };

/** Cell-centered spectral grid, symmetric about 0.  In uniform_k mode the
 * eigenvalue label is K = k; in k_equals_w_of_k mode K_j = W(k_j), so the
 * propagator reads exp(-W(k)^2 D t) and the K quadrature weight is the
 * exact K width of each k cell. */
class kgrid {
public:
    static kgrid uniform(double k_max, std::size_t n_k);
    static kgrid w_of_k(double k_max, std::size_t n_k, const point_transform& pt);

    kgrid_mode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return k_.size(); }
    const std::vector<double>& k() const noexcept { return k_; }
    const std::vector<double>& K() const noexcept { return K_; }
    const std::vector<double>& dK() const noexcept { return dK_; }
    const std::vector<double>& dk() const noexcept { return dk_; }

private:
    static kgrid build(kgrid_mode mode, double k_max, std::size_t n_k,
                       const point_transform* pt);
    kgrid_mode mode_ = kgrid_mode::uniform_k;
    std::vector<double> k_, K_, dK_, dk_;
};

struct spectral_field {
    kgrid grid;
    std::vector<std::complex<double>> values;
};

/** Sizing request; zeros mean "derive from the problem".  k_max is chosen so
 * the propagated spectrum decays below rounding; n_k so that the synthesis
 * alias period exceeds the W span of the target grid.  When no mode is
 * given the solver picks K = W(k) for the x-domain kernel families and the
 * plain conjugate grid for the W-Fourier route. */
struct kgrid_spec {
    std::optional<kgrid_mode> mode;
    double k_max = 0.0;
    std::size_t n_k = 0;
};

kgrid resolve_kgrid(kgrid_mode mode, const kgrid_spec& spec, const point_transform& pt,
                    const grid1d& g, double diffusion, double t_min, double ic_width_w);

} // namespace ptdiff

#endif
