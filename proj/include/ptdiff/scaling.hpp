#ifndef PTDIFF_SCALING_HPP
#define PTDIFF_SCALING_HPP

#include "ptdiff/density.hpp"
#include "ptdiff/point_transform.hpp"

#include <string>
#include <vector>

namespace ptdiff {

/** Central second moment of the density read in the chosen coordinate,
 * under that coordinate's measure (dx for x, dW for w).  The field must
 * already be normalized there: a norm off by less than 1e-6 is silently
 * renormalized, anything larger throws normalization_drift. */
double msd(const density_field& rho, coordinate coord);

struct moment_result {
    double msd = 0.0;
    double mean = 0.0;
    double norm = 0.0; // integral before renormalization
};

/** Renormalizes deliberately (the x reading of a W-normalized solution has
 * a time-dependent dx norm) and reports the norm it divided out. */
moment_result msd_with_norm(const density_field& rho, coordinate coord);

struct msd_series {
    std::vector<double> times;
    std::vector<double> msd_x, msd_w;
    std::vector<double> norm_x, norm_w;
    std::vector<double> norm_drift; // conserved-measure mass minus 1
};

msd_series compute_msd_series(const std::vector<density_field>& snapshots,
                              const std::vector<double>& times);

struct scaling_fit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/** Ordinary least squares of log(msd) on log(t) inside [t_lo, t_hi];
 * throws window_too_sparse with fewer than 5 points. */
scaling_fit fit_scaling(const msd_series& series, coordinate coord, double t_lo, double t_hi);

enum class regime { ballistic, super_diffusive, normal, sub_diffusive };
const char* regime_name(regime r);

/** beta = 1/exponent; beta within 0.02 of 1 is normal, beta < 0.25
 * ballistic, 0.25 <= beta < 1 super-diffusive, beta > 1 sub-diffusive. */
regime classify_regime(double exponent);

struct crossover_result {
    scaling_fit early, late;
    double knee_time = 0.0;
    bool no_knee = false; // two-segment fit improves the residual by < 1%
};

/** Two-segment piecewise-linear fit in log-log space over an exhaustive
 * breakpoint search; needs at least 3 decades of t (span_too_short). */
crossover_result detect_crossover(const msd_series& series, coordinate coord);

// --- O'Shaughnessy-Procaccia correspondence --------------------------------

struct osp_map {
    point_transform transform = point_transform::monomial(1.0); // monomial in y
    double beta = 1.0;
    double effective_scale = 1.0;    // c^2 beta^2 D
    double composite_exponent = 1.0; // W = x^(beta c)
};

/** beta = g/2 - c + 2; throws non_positive_beta when the pair has no valid
 * transform representative. */
osp_map osp_to_pt(double c, double g, double D);

/** g = 2 (beta + c - 2); the inverse is one-parameter underdetermined, so
 * the caller pins c. */
double pt_to_osp(double beta, double c);

} // namespace ptdiff

#endif
