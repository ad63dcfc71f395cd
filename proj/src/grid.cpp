#include "ptdiff/grid.hpp"

#include <cmath>
#include <string>

namespace ptdiff {

grid1d::grid1d(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
        fail(errc::bad_bounds, "grid bounds must satisfy x_min < x_max");
    if (n < 4)
        fail(errc::bad_bounds, "grid needs at least 4 nodes, got " + std::to_string(n));
    if (x_min == -x_max && n % 2 != 0)
        fail(errc::odd_node_count_on_symmetric_domain,
             "symmetric domains require an even node count so no node hits x = 0");
    h_ = (x_max - x_min) / static_cast<double>(n);
    nodes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) nodes_[i] = node(i);
}

} // namespace ptdiff
