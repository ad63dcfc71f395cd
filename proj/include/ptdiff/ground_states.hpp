#ifndef PTDIFF_GROUND_STATES_HPP
#define PTDIFF_GROUND_STATES_HPP

#include "ptdiff/grid.hpp"
#include "ptdiff/point_transform.hpp"

#include <cstddef>
#include <vector>

namespace ptdiff {

/** Ground states of the generalized harmonic-oscillator pairs.
 *
 *   h1h3: psi = f^a      exp(-W^2/2)   (annihilated by f^(a-1) d/dx f^-a + W)
 *   h2h4: psi = f^(1-a)  exp(-W^2/2)   (annihilated by f^-a d/dx f^(a-1) + W)
 *
 * Samples are normalized under dx and non-negative for every valid
 * transform (dW/dx never changes sign). */
enum class gs_family { h1h3, h2h4 };

struct ground_state {
    gs_family family = gs_family::h1h3;
    double alpha = 0.0;
    point_transform transform = point_transform::monomial(1.0);
    grid1d grid;
    std::vector<double> samples;
};

ground_state build_ground_state(gs_family family, double alpha, const point_transform& pt,
                                const grid1d& g);

/** Discretizes the annihilating factor with the staggered face scheme and
 * returns max |A psi| over interior faces divided by max |psi|; O(h^2).
 * skip_center_cells masks faces within that many cells of x = 0, where a
 * vanishing dW/dx slows local convergence (reported separately). */
double annihilation_residual(const ground_state& gs, std::size_t skip_center_cells = 0);

/** Number of strict interior local maxima (a plateau counts once). */
std::size_t count_modes(const ground_state& gs);
std::size_t count_local_maxima(const std::vector<double>& v);

} // namespace ptdiff

#endif
