#include "ptdiff/tridiag.hpp"

#include "ptdiff/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ptdiff {

std::vector<double> thomas_solve(const std::vector<double>& sub,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& super,
                                 const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n), d(n), x(n);
    double piv = diag[0];
    if (piv == 0.0) fail(errc::numerical_failure, "zero pivot in tridiagonal solve");
    c[0] = super[0] / piv;
    d[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] - sub[i] * c[i - 1];
        if (piv == 0.0) fail(errc::numerical_failure, "zero pivot in tridiagonal solve");
        c[i] = (i + 1 < n) ? super[i] / piv : 0.0;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / piv;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

namespace {

// Number of eigenvalues strictly below x (LDL^T pivot sign count).
std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
    const std::size_t n = d.size();
    std::size_t count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        double denom = q;
        if (denom == 0.0) denom = 1e-300;
        q = d[i] - x - e[i - 1] * e[i - 1] / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace

double tridiag_max_eigenvalue(const std::vector<double>& d, const std::vector<double>& e) {
    const std::size_t n = d.size();
    if (n == 0) fail(errc::eigensolve_failure, "empty matrix");
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double span = std::max(hi - lo, 1.0);
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * span; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) >= n)
            hi = mid; // all eigenvalues below mid
        else
            lo = mid;
    }
    return hi;
}

} // namespace ptdiff
