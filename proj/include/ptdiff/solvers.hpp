#ifndef PTDIFF_SOLVERS_HPP
#define PTDIFF_SOLVERS_HPP

#include "ptdiff/density.hpp"
#include "ptdiff/kgrid.hpp"
#include "ptdiff/operators.hpp"

#include <vector>

namespace ptdiff {

enum class solve_method { w_closed_form, spectral, finite_difference };
enum class spectral_route { auto_select, w_fourier, biorthogonal, bessel };

struct solve_request {
    operator_spec op;
    grid1d grid{-10.0, 10.0, 4000};
    initial_condition ic;
    std::vector<double> times;
    solve_method method = solve_method::finite_difference;

    // finite-difference controls; dt = 0 selects the adaptive default
    // (min(1e-4, 0.05 t_1) on the first interval, growing with the gaps)
    double dt = 0.0;
    bool accuracy_monitor = false;

    // spectral controls
    spectral_route route = spectral_route::auto_select;
    kgrid_spec kspec;

    void validate() const;
};

struct mass_report {
    double initial = 0.0;
    double final_mass = 0.0;
    double drift = 0.0;            // final - initial under the conserved measure
    double boundary_leakage = 0.0; // accumulated Dirichlet wall flux
};

struct solve_result {
    std::vector<density_field> snapshots;
    mass_report mass;
};

/** Exact W-domain route: the heat kernel integrated analytically over each
 * W cell (so the t -> 0 limit is the identity), applied to the initial
 * density.  Snapshots are W-coordinate fields normalized under dW. */
solve_result solve_w_closed_form(const solve_request& req);

/** Forward transform of the initial density with the operator's kernel
 * family, multiplication by exp(-K^2 D t), inverse transform. */
solve_result solve_spectral(const solve_request& req);

/** Crank-Nicolson stepping of the banded operator; snapshot times are hit
 * exactly by shortening the final step of each interval. */
solve_result solve_fd(const solve_request& req);

solve_result solve(const solve_request& req);

/** Conserved-measure exponent of the variant (left null vector f^e). */
double conserved_measure_exponent(const operator_spec& spec);

/** Resolves auto_select to the operator's kernel family; throws
 * no_kernel_available when none exists (delta1/delta2 with polynomial W or
 * alpha != 0). */
spectral_route pick_spectral_route(const solve_request& req);

} // namespace ptdiff

#endif
