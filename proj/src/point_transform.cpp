#include "ptdiff/point_transform.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ptdiff {

const char* errc_name(errc c) {
    switch (c) {
        case errc::non_positive_beta: return "NonPositiveBeta";
        case errc::even_leading_power: return "EvenLeadingPower";
        case errc::negative_coefficient: return "NegativeCoefficient";
        case errc::even_coefficient_not_dominated: return "EvenCoefficientNotDominated";
        case errc::all_zero_coefficients: return "AllZeroCoefficients";
        case errc::unbounded: return "Unbounded";
        case errc::no_convergence: return "NoConvergence";
        case errc::bad_bounds: return "BadBounds";
        case errc::odd_node_count_on_symmetric_domain: return "OddNodeCountOnSymmetricDomain";
        case errc::singular_weight: return "SingularWeight";
        case errc::eigensolve_failure: return "EigensolveFailure";
        case errc::order_out_of_range: return "OrderOutOfRange";
        case errc::truncation_unsafe: return "TruncationUnsafe";
        case errc::no_kernel_available: return "NoKernelAvailable";
        case errc::not_monomial: return "NotMonomial";
        case errc::beta_too_small: return "BetaTooSmall";
        case errc::step_too_large: return "StepTooLarge";
        case errc::normalization_drift: return "NormalizationDrift";
        case errc::window_too_sparse: return "WindowTooSparse";
        case errc::span_too_short: return "SpanTooShort";
        case errc::non_positive_exponent: return "NonPositiveExponent";
        case errc::config_error: return "ConfigError";
        case errc::numerical_failure: return "NumericalFailure";
    }
    return "Unknown";
}

point_transform point_transform::monomial(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        fail(errc::non_positive_beta, "monomial exponent must be a positive finite real");
    point_transform pt;
    pt.kind_ = kind::monomial;
    pt.beta_ = beta;
    return pt;
}

point_transform point_transform::polynomial(std::vector<double> coeffs) {
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (!(coeffs[j] >= 0.0) || !std::isfinite(coeffs[j]))
            fail(errc::negative_coefficient,
                 "coefficient a_" + std::to_string(j + 1) + " must be finite and >= 0");
    }
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.empty())
        fail(errc::all_zero_coefficients, "at least one coefficient must be positive");
    if (coeffs.size() % 2 == 0)
        fail(errc::even_leading_power,
             "highest nonzero power is " + std::to_string(coeffs.size()) + "; it must be odd");
    // dominance rule: a_{2m} < a_{2m+1} whenever a_{2m} > 0
    for (std::size_t j = 1; j + 1 < coeffs.size(); j += 2) {
        if (coeffs[j] > 0.0 && coeffs[j] >= coeffs[j + 1])
            fail(errc::even_coefficient_not_dominated,
                 "a_" + std::to_string(j + 1) + " = " + std::to_string(coeffs[j]) +
                     " must be strictly below a_" + std::to_string(j + 2));
    }
    point_transform pt;
    pt.kind_ = kind::polynomial;
    pt.coeffs_ = std::move(coeffs);
    return pt;
}

double point_transform::evaluate(double x) const {
    if (kind_ == kind::monomial) {
        // sgn(x) |x|^beta; odd and real for every beta > 0
        return std::copysign(std::pow(std::fabs(x), beta_), x);
    }
    const double a = std::fabs(x);
    double p = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) p = p * a + coeffs_[j];
    return std::copysign(p * a, x);
}

double point_transform::derivative(double x) const {
    const double a = std::fabs(x);
    if (kind_ == kind::monomial) {
        if (a == 0.0) {
            if (beta_ > 1.0) return 0.0;
            if (beta_ == 1.0) return 1.0;
            fail(errc::unbounded, "dW/dx diverges at x = 0 for beta < 1; use a grid avoiding 0");
        }
        return beta_ * std::pow(a, beta_ - 1.0);
    }
    // d/dx [ sgn(x) sum a_j |x|^j ] = sum j a_j |x|^{j-1}, even in x
    double p = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 1;)
        p = p * a + static_cast<double>(j + 1) * coeffs_[j];
    return p * a + coeffs_[0];
}

bool point_transform::degenerate_at_origin() const {
    if (kind_ == kind::monomial) return beta_ != 1.0;
    return coeffs_[0] == 0.0;
}

double point_transform::invert(double w, double rel_tol) const {
    if (w == 0.0) return 0.0;
    const double tol = rel_tol * std::fmax(1.0, std::fabs(w));
    const double aw = std::fabs(w);

    // W is odd: solve on the positive half-line and restore the sign.
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (evaluate(hi) < aw) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 1100) fail(errc::no_convergence, "bracketing failed to straddle the target");
    }

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = evaluate(x) - aw;
        if (std::fabs(f) <= tol) return std::copysign(x, w);
        if (f > 0.0) hi = x; else lo = x;
        // Newton step when it stays inside the bracket, bisection otherwise
        double xn = x;
        const double d = (x == 0.0 && degenerate_at_origin()) ? 0.0 : derivative(x);
        if (d > 0.0) xn = x - f / d;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (xn == x) xn = 0.5 * (lo + hi);
        x = xn;
    }
    if (std::fabs(evaluate(x) - aw) <= tol) return std::copysign(x, w);
    fail(errc::no_convergence, "inverse iteration cap exceeded (degenerate plateau?)");
}

std::string point_transform::describe() const {
    std::ostringstream os;
    if (kind_ == kind::monomial) {
        os << "sgn(x)|x|^" << beta_;
    } else {
        bool first = true;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            if (coeffs_[j] == 0.0) continue;
            if (!first) os << " + ";
            if (coeffs_[j] != 1.0) os << coeffs_[j];
            os << "x";
            if (j > 0) os << "^" << j + 1;
            first = false;
        }
    }
    return os.str();
}

} // namespace ptdiff
