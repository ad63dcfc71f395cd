#ifndef PTDIFF_ERRORS_HPP
#define PTDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptdiff {

enum class errc {
    // point transforms
    non_positive_beta,
    even_leading_power,
    negative_coefficient,
    even_coefficient_not_dominated,
    all_zero_coefficients,
    unbounded,
    no_convergence,
    // grids and operators
    bad_bounds,
    odd_node_count_on_symmetric_domain,
    singular_weight,
    eigensolve_failure,
    // transforms
    order_out_of_range,
    truncation_unsafe,
    no_kernel_available,
    not_monomial,
    beta_too_small,
    // solvers
    step_too_large,
    // analysis
    normalization_drift,
    window_too_sparse,
    span_too_short,
    non_positive_exponent,
    // runner
    config_error,
    numerical_failure,
};

const char* errc_name(errc c);

/** Exception carrying a typed error code.  For configuration errors the
 * `field` member names the offending config entry as a dotted path. */
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what, std::string field = {})
        : std::runtime_error(what), code_(code), field_(std::move(field)) {}
    errc code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    errc code_;
    std::string field_;
};

[[noreturn]] inline void fail(errc code, const std::string& what, std::string field = {}) {
    throw error(code, what, std::move(field));
}

} // namespace ptdiff

#endif
