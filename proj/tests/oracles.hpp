#ifndef PTDIFF_TEST_ORACLES_HPP
#define PTDIFF_TEST_ORACLES_HPP

// Independent reference implementations used only by the test suites.  They
// deliberately avoid the library's code paths.

#include <quadmath.h>

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/** J_nu(z) by the ascending series in 128-bit floats; good to ~1e-28
 * relative for z <= 35, any |nu| < 5 off the negative-integer poles. */
inline double bessel_j_quad(double nu, double z) {
    if (nu < 0.0 && nu == std::floor(nu)) {
        const double sign = static_cast<long>(-nu) % 2 == 0 ? 1.0 : -1.0;
        return sign * bessel_j_quad(-nu, z);
    }
    const __float128 zq = z, nq = nu, one = 1;
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    __float128 term = powq(zq / 2, nq) / tgammaq(nq + one);
    __float128 sum = term;
    const __float128 q = zq * zq / 4;
    const __float128 tiny = powq(10, -32);
    for (int m = 1; m < 500; ++m) {
        term *= -q / (static_cast<__float128>(m) * (static_cast<__float128>(m) + nq));
        sum += term;
        if (fabsq(term) < tiny * fabsq(sum) && m > z) break;
    }
    return static_cast<double>(sum);
}

/** Cyclic Jacobi eigenvalues of a dense symmetric matrix (row-major). */
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
    return ev;
}

/** Plain bisection root bracketing for monotone f; the independent check
 * for the library's safeguarded-Newton inverse. */
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14) {
    double flo = f(lo);
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0 && fm <= 0.0) || (flo >= 0.0 && fm >= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) /
                                     static_cast<double>(n - 1));
    return out;
}

} // namespace oracle

#endif
