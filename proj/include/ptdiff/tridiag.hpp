#ifndef PTDIFF_TRIDIAG_HPP
#define PTDIFF_TRIDIAG_HPP

#include <cstddef>
#include <vector>

namespace ptdiff {

/** Thomas algorithm for a tridiagonal system.  sub[0] and super[n-1] are
 * ignored.  No pivoting: intended for the diagonally dominant systems
 * produced by Crank-Nicolson steps.  Returns the solution. */
std::vector<double> thomas_solve(const std::vector<double>& sub,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& super,
                                 const std::vector<double>& rhs);

/** Largest eigenvalue of a symmetric tridiagonal matrix (diag d, off-diagonal
 * e with e.size() == d.size()-1) by Sturm-sequence bisection. */
double tridiag_max_eigenvalue(const std::vector<double>& d, const std::vector<double>& e);

} // namespace ptdiff

#endif
