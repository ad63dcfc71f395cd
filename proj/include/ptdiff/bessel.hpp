#ifndef PTDIFF_BESSEL_HPP
#define PTDIFF_BESSEL_HPP

#include "ptdiff/errors.hpp"

namespace ptdiff {

/** Bessel function of the first kind J_nu(z) for |nu| < 2 and z >= 0.
 *
 * Ascending power series below z_switch, Hankel large-argument expansion
 * above, both accumulated in extended precision.  Relative error is below
 * 1e-10 over z in [0, 200] (measured against the envelope sqrt(2/(pi z))
 * near the zeros).  Throws order_out_of_range for |nu| >= 2 or z < 0.
 */
double bessel_j(double nu, double z);

/** z^p * J_nu(z), with the z^(p+nu) prefactor folded into the series so the
 * kernel combinations that cancel the z^nu singularity stay finite at 0. */
double bessel_j_pow(double nu, double z, double p);

namespace detail {
inline constexpr double bessel_z_switch = 18.0;
double bessel_j_series(double nu, double z);
double bessel_j_asymptotic(double nu, double z);
} // namespace detail

} // namespace ptdiff

#endif
