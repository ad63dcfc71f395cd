#include "ptdiff/operators.hpp"

#include "ptdiff/csv.hpp"
#include "ptdiff/tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace ptdiff {

const char* laplacian_name(laplacian v) {
    switch (v) {
        case laplacian::delta1: return "delta1";
        case laplacian::delta2: return "delta2";
        case laplacian::delta3: return "delta3";
        case laplacian::delta4: return "delta4";
    }
    return "?";
}

void operator_spec::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        fail(errc::config_error, "ordering parameter alpha must lie in [0, 1]", "operator.alpha");
    if (!(diffusion > 0.0) || !std::isfinite(diffusion))
        fail(errc::config_error, "diffusion coefficient D must be positive", "D");
}

namespace {

double checked_pow(double base, double expo) {
    if (expo == 0.0) return 1.0;
    return std::pow(base, expo);
}

} // namespace

assembled_operator assemble(const operator_spec& spec, const grid1d& grid) {
    spec.validate();
    const std::size_t n = grid.n();
    const double h = grid.h();
    const double a = spec.alpha;
    const point_transform& pt = spec.transform;

    assembled_operator op(spec, grid);
    op.sub_.assign(n, 0.0);
    op.diag_.assign(n, 0.0);
    op.super_.assign(n, 0.0);
    op.measure_.assign(n, 0.0);
    op.f_.resize(n);
    for (std::size_t i = 0; i < n; ++i) op.f_[i] = pt.derivative(grid.node(i));

    // Local W spacings across all n+1 faces, ghost nodes half a cell outside.
    std::vector<double> dW(n + 1);
    {
        double w_prev = pt.evaluate(grid.x_min() - 0.5 * h);
        for (std::size_t i = 0; i < n; ++i) {
            const double w_i = pt.evaluate(grid.node(i));
            dW[i] = w_i - w_prev;
            w_prev = w_i;
        }
        dW[n] = pt.evaluate(grid.x_max() + 0.5 * h) - w_prev;
    }
    for (double s : dW)
        if (!(s > 0.0) || !std::isfinite(s))
            fail(errc::singular_weight, "W has a zero or non-finite spacing across a cell");

    const bool symmetric_pair =
        spec.variant == laplacian::delta1 || spec.variant == laplacian::delta2;

    if (symmetric_pair) {
        // A = -S L S with S = diag(f^-p) at nodes, L = D_W^T diag(fh^c) D_W,
        // fh at faces.  delta1: p = a, c = 2a.  delta2: p = 1-a, c = 2-2a.
        const double p = spec.variant == laplacian::delta1 ? a : 1.0 - a;
        const double c = 2.0 * (spec.variant == laplacian::delta1 ? a : 1.0 - a);
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = checked_pow(op.f_[i], -p);

        std::vector<double> g(n + 1); // face conductivities fh^c / dW^2
        for (std::size_t j = 0; j <= n; ++j) {
            const double xf = grid.x_min() + static_cast<double>(j) * h;
            double fh = 1.0;
            if (c != 0.0) fh = checked_pow(pt.derivative(xf), c);
            g[j] = fh / (dW[j] * dW[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 1 < n) {
                // one shared product keeps the band bit-for-bit symmetric
                const double couple = spec.diffusion * g[i + 1] * (s[i] * s[i + 1]);
                op.super_[i] = couple;
                op.sub_[i + 1] = couple;
            }
            op.diag_[i] = -spec.diffusion * (g[i] + g[i + 1]) * (s[i] * s[i]);
            op.measure_[i] = h;
        }
        op.conserved_exp_ = spec.variant == laplacian::delta1 ? a : 1.0 - a;
    } else {
        // delta3 = (1/h) f^(a-1) E0 D_W f^-a; delta4 is its transpose.
        // Row i of delta3: f_i^(a-1)/h * [ (f^-a u)_{i+1,i} / dW - ... ].
        std::vector<double> left(n), right(n);
        for (std::size_t i = 0; i < n; ++i) {
            left[i] = checked_pow(op.f_[i], a - 1.0);
            right[i] = checked_pow(op.f_[i], -a);
        }
        std::vector<double> sub3(n, 0.0), diag3(n, 0.0), super3(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double cm = spec.diffusion / (h * dW[i]);
            const double cp = spec.diffusion / (h * dW[i + 1]);
            if (i > 0) sub3[i] = cm * (left[i] * right[i - 1]);
            if (i + 1 < n) super3[i] = cp * (left[i] * right[i + 1]);
            diag3[i] = -(cm + cp) * (left[i] * right[i]);
        }
        if (spec.variant == laplacian::delta3) {
            op.sub_ = std::move(sub3);
            op.diag_ = std::move(diag3);
            op.super_ = std::move(super3);
        } else {
            // exact transpose of the delta3 band
            op.diag_ = std::move(diag3);
            for (std::size_t i = 0; i + 1 < n; ++i) op.super_[i] = sub3[i + 1];
            for (std::size_t i = 1; i < n; ++i) op.sub_[i] = super3[i - 1];
        }
        const double me = spec.variant == laplacian::delta3 ? 1.0 - 2.0 * a : 2.0 * a - 1.0;
        for (std::size_t i = 0; i < n; ++i) op.measure_[i] = h * checked_pow(op.f_[i], me);
        op.conserved_exp_ = spec.variant == laplacian::delta3 ? 1.0 - a : a;
    }

    double bmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(op.sub_[i]) || !std::isfinite(op.diag_[i]) ||
            !std::isfinite(op.super_[i]) || !std::isfinite(op.measure_[i]))
            fail(errc::singular_weight,
                 "dW/dx is zero or non-finite at a point needed by " +
                     std::string(laplacian_name(spec.variant)));
        bmax = std::max({bmax, std::fabs(op.sub_[i]), std::fabs(op.diag_[i]),
                         std::fabs(op.super_[i])});
    }
    op.band_max_ = bmax;
    return op;
}

double adjoint_residual(const assembled_operator& op) {
    const std::size_t n = op.diag().size();
    const auto& m = op.measure_weights();
    double num = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // (M A)_{i,i+1} vs (A^T M)_{i,i+1} = m_{i+1} sub_{i+1}
        num = std::max(num, std::fabs(m[i] * op.super()[i] - m[i + 1] * op.sub()[i + 1]));
    }
    return num / op.band_max();
}

double adjoint_residual(const assembled_operator& op3, const assembled_operator& op4) {
    const std::size_t n = op3.diag().size();
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num = std::max(num, std::fabs(op3.diag()[i] - op4.diag()[i]));
        if (i + 1 < n) {
            num = std::max(num, std::fabs(op3.super()[i] - op4.sub()[i + 1]));
            num = std::max(num, std::fabs(op3.sub()[i + 1] - op4.super()[i]));
        }
    }
    return num / op3.band_max();
}

double spectrum_check(const assembled_operator& op) {
    const std::size_t n = op.diag().size();
    std::vector<double> d = op.diag();
    std::vector<double> e(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double prod = op.super()[i] * op.sub()[i + 1];
        if (prod < 0.0)
            fail(errc::eigensolve_failure, "band could not be symmetrized (mixed-sign couple)");
        e[i] = std::sqrt(prod);
    }
    return tridiag_max_eigenvalue(d, e);
}

void dump_operator_csv(const assembled_operator& op, const std::string& path) {
    csv_writer csv(path, {"index", "x", "f", "sub", "diag", "super", "measure_weight"});
    for (std::size_t i = 0; i < op.grid().n(); ++i)
        csv.row({static_cast<double>(i), op.grid().node(i), op.f_nodes()[i], op.sub()[i],
                 op.diag()[i], op.super()[i], op.measure_weights()[i]});
}

} // namespace ptdiff
