#include "ptdiff/bessel.hpp"

#include "ptdiff/errors.hpp"

#include <cmath>
#include <limits>

namespace ptdiff {

namespace {

constexpr long double pi_l = 3.14159265358979323846264338327950288L;

bool is_integer(double v) { return v == std::floor(v); }

// Sum of (-1)^m (z/2)^(2m) / (m! Gamma(m+nu+1)) scaled by a caller-supplied
// leading factor; Kahan-compensated in long double.
long double series_tail(long double nu, long double z, long double lead) {
    const long double q = 0.25L * z * z;
    long double term = lead;
    long double sum = lead;
    long double comp = 0.0L;
    for (int m = 1; m < 400; ++m) {
        term *= -q / (static_cast<long double>(m) * (static_cast<long double>(m) + nu));
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::fabs(term) < 1e-25L * std::fabs(sum) && m > static_cast<int>(z)) break;
    }
    return sum;
}

} // namespace

namespace detail {

double bessel_j_series(double nu, double z) {
    const long double zl = z;
    const long double nul = nu;
    // leading term (z/2)^nu / Gamma(nu+1)
    const long double lead = std::exp(nul * std::log(0.5L * zl)) / tgammal(nul + 1.0L);
    return static_cast<double>(series_tail(nul, zl, lead));
}

double bessel_j_asymptotic(double nu, double z) {
    const long double zl = z;
    const long double mu = 4.0L * static_cast<long double>(nu) * nu;
    // a_{k+1} = a_k (mu - (2k+1)^2) / (8 (k+1) z); split into P (even k) and
    // Q (odd k) with alternating signs, truncated at the smallest term.
    long double p = 1.0L, q = 0.0L;
    long double ak = 1.0L;
    long double prev = std::numeric_limits<long double>::max();
    for (int k = 0; k < 60; ++k) {
        const long double odd = 2.0L * k + 1.0L;
        ak *= (mu - odd * odd) / (8.0L * (k + 1.0L) * zl);
        if (std::fabs(ak) >= prev) break; // divergent tail reached
        prev = std::fabs(ak);
        const int r = (k + 1) % 4;
        if (r == 1) q += ak;
        else if (r == 2) p -= ak;
        else if (r == 3) q -= ak;
        else p += ak;
        if (std::fabs(ak) < 1e-22L) break;
    }
    const long double chi = zl - (0.5L * nu + 0.25L) * pi_l;
    const long double env = std::sqrt(2.0L / (pi_l * zl));
    return static_cast<double>(env * (p * std::cos(chi) - q * std::sin(chi)));
}

} // namespace detail

double bessel_j(double nu, double z) {
    if (!(std::fabs(nu) < 2.0))
        fail(errc::order_out_of_range, "bessel_j supports |nu| < 2, got nu = " + std::to_string(nu));
    if (!(z >= 0.0))
        fail(errc::order_out_of_range, "bessel_j requires z >= 0");
    if (is_integer(nu) && nu < 0.0) return -bessel_j(-nu, z); // J_{-1} = -J_1
    if (z == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        return std::copysign(std::numeric_limits<double>::infinity(),
                             std::tgamma(nu + 1.0));
    }
    if (z <= detail::bessel_z_switch) return detail::bessel_j_series(nu, z);
    return detail::bessel_j_asymptotic(nu, z);
}

double bessel_j_pow(double nu, double z, double p) {
    if (!(std::fabs(nu) < 2.0))
        fail(errc::order_out_of_range, "bessel_j supports |nu| < 2, got nu = " + std::to_string(nu));
    if (z == 0.0) {
        if (p + nu > 0.0) return 0.0;
        if (p + nu == 0.0)
            return static_cast<double>(1.0L / (std::exp(static_cast<long double>(nu) *
                                                        std::log(2.0L)) *
                                               tgammal(static_cast<long double>(nu) + 1.0L)));
        return std::numeric_limits<double>::infinity();
    }
    if (z <= detail::bessel_z_switch) {
        const long double zl = z, nul = nu, pl = p;
        // (z/2)^nu z^p = exp((nu+p) log z - nu log 2)
        const long double lead =
            std::exp((nul + pl) * std::log(zl) - nul * std::log(2.0L)) / tgammal(nul + 1.0L);
        return static_cast<double>(series_tail(nul, zl, lead));
    }
    return std::pow(z, p) * bessel_j(nu, z);
}

} // namespace ptdiff
