#ifndef PTDIFF_POINT_TRANSFORM_HPP
#define PTDIFF_POINT_TRANSFORM_HPP

#include "ptdiff/errors.hpp"

#include <string>
#include <vector>

namespace ptdiff {

/** Invertible point transformation W(x) on the whole real line.
 *
 * Two variants are supported:
 *   - monomial:   W(x) = sgn(x) |x|^beta, beta > 0
 *   - polynomial: W(x) = sgn(x) * sum_j a_j |x|^j  (a_1 first, constant
 *     term fixed at zero)
 *
 * Both are odd and monotone non-decreasing; dW/dx may vanish (or, for
 * monomial beta < 1, diverge) at x = 0 only.  Instances are immutable once
 * validated and safe for concurrent reads.
 */
class point_transform {
public:
    enum class kind { monomial, polynomial };

    /** Validates and builds a monomial transform.  Throws non_positive_beta. */
    static point_transform monomial(double beta);

    /** Validates and builds a polynomial transform from coefficients a_1..a_{2J+1}.
     *
     * Rules (throwing the matching errc):
     *   - every coefficient >= 0            (negative_coefficient)
     *   - at least one coefficient > 0      (all_zero_coefficients)
     *   - highest nonzero index is odd      (even_leading_power)
     *   - each nonzero even-index a_{2m} is strictly below a_{2m+1}
     *                                       (even_coefficient_not_dominated)
     */
    static point_transform polynomial(std::vector<double> coeffs);

    kind variant() const noexcept { return kind_; }
    bool is_monomial() const noexcept { return kind_ == kind::monomial; }
    double beta() const noexcept { return beta_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /** W(x).  Odd by construction: evaluate(-x) == -evaluate(x) bit for bit. */
    double evaluate(double x) const;

    /** dW/dx >= 0.  Throws unbounded for monomial beta < 1 at x = 0. */
    double derivative(double x) const;

    /** Solves W(x) = w to |W(x) - w| <= rel_tol * max(1, |w|) by bracketed
     * bisection with Newton refinement.  Throws no_convergence if the
     * iteration cap is hit (degenerate plateau or unreachable tolerance). */
    double invert(double w, double rel_tol = 1e-12) const;

    /** True when dW/dx = 0 or dW/dx = +inf at x = 0 (grid must avoid 0). */
    bool degenerate_at_origin() const;

    std::string describe() const;

private:
    point_transform() = default;
    kind kind_ = kind::monomial;
    double beta_ = 1.0;
    std::vector<double> coeffs_;
};

} // namespace ptdiff

#endif
