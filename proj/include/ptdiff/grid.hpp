#ifndef PTDIFF_GRID_HPP
#define PTDIFF_GRID_HPP

#include "ptdiff/errors.hpp"

#include <cstddef>
#include <vector>

namespace ptdiff {

/** Cell-centered 1-D grid: x_i = x_min + (i + 1/2) h, h = (x_max - x_min)/n.
 *
 * On symmetric domains (x_min = -x_max) an even node count is enforced, so
 * no node ever lands on x = 0 where dW/dx may vanish or diverge.  Faces sit
 * at x_min + (i + 1) h between nodes i and i+1; the two domain edges act as
 * homogeneous Dirichlet walls.
 */
class grid1d {
public:
    grid1d(double x_min, double x_max, std::size_t n);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double h() const noexcept { return h_; }
    std::size_t n() const noexcept { return n_; }

    double node(std::size_t i) const { return x_min_ + (static_cast<double>(i) + 0.5) * h_; }
    /** Interior face j sits between nodes j and j+1, j in [0, n-2]. */
    double face(std::size_t j) const { return x_min_ + (static_cast<double>(j) + 1.0) * h_; }

    const std::vector<double>& nodes() const noexcept { return nodes_; }

    bool symmetric() const noexcept { return x_min_ == -x_max_; }

private:
    double x_min_, x_max_, h_;
    std::size_t n_;
    std::vector<double> nodes_;
};

} // namespace ptdiff

#endif
