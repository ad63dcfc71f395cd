#ifndef PTDIFF_DENSITY_HPP
#define PTDIFF_DENSITY_HPP

#include "ptdiff/grid.hpp"
#include "ptdiff/point_transform.hpp"

#include <functional>
#include <vector>

namespace ptdiff {

enum class coordinate { x, w };

/** Integration weight f^e dx: e = 0 is plain dx, e = 1 is dW. */
struct measure {
    double f_exponent = 0.0;
    static measure dx() { return {0.0}; }
    static measure dW() { return {1.0}; }
    static measure weighted(double e) { return {e}; }
};

/** A probability density sampled on the nodes of a grid.  The same node
 * values can be read as a density in x or in W = W(x); the coordinate and
 * measure tags record which normalization the producer guaranteed. */
struct density_field {
    grid1d grid;
    point_transform transform;
    coordinate coord = coordinate::x;
    measure meas;
    std::vector<double> values;

    /** sum_i values_i f_i^e h for this field's own measure. */
    double mass() const;
    /** Quadrature weights of an arbitrary measure on this grid. */
    std::vector<double> weights(measure m) const;
};

struct initial_condition {
    enum class kind { gaussian_in_w, delta_at, custom };
    kind k = kind::gaussian_in_w;
    double width = 0.022360679774997897; // exp(-1000 W^2)
    double center = 0.0;                 // x position of the narrow peak
    std::function<double(double)> sampler;

    static initial_condition gaussian_in_w(double width);
    static initial_condition delta_at(double center_x,
                                      double width = 0.022360679774997897);
    static initial_condition custom(std::function<double(double)> f);

    /** Samples the profile on the grid (unnormalized). */
    std::vector<double> realize(const grid1d& g, const point_transform& pt) const;
};

} // namespace ptdiff

#endif
