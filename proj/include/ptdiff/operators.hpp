#ifndef PTDIFF_OPERATORS_HPP
#define PTDIFF_OPERATORS_HPP

#include "ptdiff/grid.hpp"
#include "ptdiff/point_transform.hpp"

#include <complex>
#include <string>
#include <vector>

namespace ptdiff {

/** The four operator orderings built from the transformed momentum operator
 * and its adjoint.  With f = dW/dx:
 *
 *   delta1 = f^-a     d/dx f^(2a-2) d/dx f^-a        self-adjoint under dx
 *   delta2 = f^(a-1)  d/dx f^-2a    d/dx f^(a-1)     self-adjoint under dx
 *   delta3 = f^(a-1)  d/dx f^-1     d/dx f^-a        self-adjoint under f^(1-2a) dx
 *   delta4 = f^-a     d/dx f^-1     d/dx f^(a-1)     self-adjoint under f^(2a-1) dx
 *
 * delta3 and delta4 are mutual adjoints under plain dx.
 */
enum class laplacian { delta1, delta2, delta3, delta4 };

const char* laplacian_name(laplacian v);

struct operator_spec {
    laplacian variant = laplacian::delta3;
    double alpha = 0.0;           // ordering parameter in [0, 1]
    point_transform transform = point_transform::monomial(1.0);
    double diffusion = 1.0;       // D > 0

    void validate() const;        // throws config_error naming the bad field
};

/** Tridiagonal discretization of D * Delta_variant on a cell-centered grid
 * with homogeneous Dirichlet walls.
 *
 * The staggered scheme scales nodes by the inner f power, takes the first
 * difference divided by the local W spacing W_{i+1} - W_i wherever the
 * analytic factor is 1/f, applies the face f power for delta1/delta2, then
 * mirrors the steps.  Consequences, exact at the discrete level:
 *   - delta1/delta2 bands are bit-for-bit symmetric;
 *   - delta4 is assembled as the transpose of the delta3 band, so the dx
 *     adjoint pairing holds to rounding;
 *   - the weighted-symmetrized form of every variant is negative
 *     semi-definite by construction.
 *
 * Immutable after assembly; safe for concurrent reads.
 */
class assembled_operator {
public:
    const operator_spec& spec() const noexcept { return spec_; }
    const grid1d& grid() const noexcept { return grid_; }

    const std::vector<double>& sub() const noexcept { return sub_; }
    const std::vector<double>& diag() const noexcept { return diag_; }
    const std::vector<double>& super() const noexcept { return super_; }

    /** Quadrature weights of the measure under which the operator is
     * self-adjoint: h for delta1/delta2, h f^(1-2a) / h f^(2a-1) for
     * delta3/delta4. */
    const std::vector<double>& measure_weights() const noexcept { return measure_; }

    /** dW/dx sampled at the nodes. */
    const std::vector<double>& f_nodes() const noexcept { return f_; }

    /** Exponent e such that sum_i f_i^e rho_i h is conserved by the
     * semigroup (left null vector of the band, up to boundary flux). */
    double conserved_exponent() const noexcept { return conserved_exp_; }

    double band_max() const noexcept { return band_max_; }

    template <class T>
    std::vector<T> apply(const std::vector<T>& u) const {
        const std::size_t n = diag_.size();
        std::vector<T> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            T v = u[i] * diag_[i];
            if (i > 0) v += u[i - 1] * sub_[i];
            if (i + 1 < n) v += u[i + 1] * super_[i];
            out[i] = v;
        }
        return out;
    }

    friend assembled_operator assemble(const operator_spec& spec, const grid1d& grid);

private:
    assembled_operator(operator_spec spec, grid1d grid)
        : spec_(std::move(spec)), grid_(std::move(grid)) {}

    operator_spec spec_;
    grid1d grid_;
    std::vector<double> sub_, diag_, super_, measure_, f_;
    double conserved_exp_ = 0.0;
    double band_max_ = 0.0;
};

/** Builds the banded form; throws singular_weight if dW/dx is zero or
 * non-finite at a point the chosen variant actually needs. */
assembled_operator assemble(const operator_spec& spec, const grid1d& grid);

/** || M A - A^T M ||_max / ||A||_max with M = diag(measure weights): the
 * self-adjointness residual of the operator under its own measure. */
double adjoint_residual(const assembled_operator& op);

/** || A3^T - A4 ||_max / ||A3||_max: the dx adjoint pairing of a delta3
 * operator against its delta4 partner (zero to rounding by construction). */
double adjoint_residual(const assembled_operator& op3, const assembled_operator& op4);

/** Largest eigenvalue of the measure-symmetrized band (Sturm bisection).
 * Contract: <= 1e-10 * band_max(). */
double spectrum_check(const assembled_operator& op);

/** Diagnostic dump: index, x, f, sub, diag, super, measure_weight. */
void dump_operator_csv(const assembled_operator& op, const std::string& path);

} // namespace ptdiff

#endif
