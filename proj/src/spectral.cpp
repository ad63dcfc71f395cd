#include "ptdiff/spectral.hpp"

#include "ptdiff/bessel.hpp"

#include <algorithm>
#include <cmath>

namespace ptdiff {

namespace {

constexpr double inv_sqrt_2pi = 0.39894228040143267794;

double peak(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace

void require_truncation_safe(const std::vector<double>& values) {
    const double m = peak(values);
    if (m == 0.0) return;
    if (std::fabs(values.front()) > 1e-12 * m || std::fabs(values.back()) > 1e-12 * m)
        fail(errc::truncation_unsafe,
             "density does not decay below 1e-12 of its peak at the domain edges");
}

// ---------------------------------------------------------------------------
// W-Fourier transform
// ---------------------------------------------------------------------------

spectral_field wft_forward(const density_field& rho, const kgrid& kg) {
    require_truncation_safe(rho.values);
    const std::size_t n = rho.grid.n(), nk = kg.size();
    std::vector<double> w(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = rho.transform.evaluate(rho.grid.node(i));
        q[i] = rho.transform.derivative(rho.grid.node(i)) * rho.grid.h() * rho.values[i];
    }
    spectral_field sf{kg, std::vector<std::complex<double>>(nk)};
    for (std::size_t j = 0; j < nk; ++j) {
        const double K = kg.K()[j];
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = K * w[i];
            re += std::cos(a) * q[i];
            im -= std::sin(a) * q[i];
        }
        sf.values[j] = {re * inv_sqrt_2pi, im * inv_sqrt_2pi};
    }
    return sf;
}

density_field wft_inverse(const spectral_field& sf, const grid1d& g, const point_transform& pt) {
    const std::size_t n = g.n(), nk = sf.grid.size();
    density_field out{g, pt, coordinate::w, measure::dW(), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double w = pt.evaluate(g.node(i));
        double acc = 0.0;
        for (std::size_t j = 0; j < nk; ++j) {
            const double a = sf.grid.K()[j] * w;
            const auto& v = sf.values[j];
            acc += (std::cos(a) * v.real() - std::sin(a) * v.imag()) * sf.grid.dK()[j];
        }
        out.values[i] = acc * inv_sqrt_2pi;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Biorthogonal kernels
// ---------------------------------------------------------------------------

std::complex<double> gft_kernel_value(gft_kernel which, double alpha, const point_transform& pt,
                                      double K, double x) {
    const double p = which == gft_kernel::phi ? alpha : 1.0 - alpha;
    const double f = pt.derivative(x);
    const double amp = (p == 0.0 ? 1.0 : std::pow(f, p)) * inv_sqrt_2pi;
    const double a = K * pt.evaluate(x);
    return {amp * std::cos(a), amp * std::sin(a)};
}

spectral_field gft_forward(const density_field& rho, gft_kernel analysis, double alpha,
                           const kgrid& kg) {
    require_truncation_safe(rho.values);
    const std::size_t n = rho.grid.n(), nk = kg.size();
    const double p = analysis == gft_kernel::phi ? alpha : 1.0 - alpha;
    std::vector<double> w(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rho.grid.node(i);
        const double f = rho.transform.derivative(x);
        w[i] = rho.transform.evaluate(x);
        q[i] = (p == 0.0 ? 1.0 : std::pow(f, p)) * rho.grid.h() * rho.values[i];
    }
    spectral_field sf{kg, std::vector<std::complex<double>>(nk)};
    for (std::size_t j = 0; j < nk; ++j) {
        const double K = kg.K()[j];
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = K * w[i];
            re += std::cos(a) * q[i];
            im -= std::sin(a) * q[i];
        }
        sf.values[j] = {re * inv_sqrt_2pi, im * inv_sqrt_2pi};
    }
    return sf;
}

density_field gft_inverse(const spectral_field& sf, gft_kernel analysis, double alpha,
                          const grid1d& g, const point_transform& pt) {
    const gft_kernel synthesis =
        analysis == gft_kernel::phi ? gft_kernel::phi_tilde : gft_kernel::phi;
    const double p = synthesis == gft_kernel::phi ? alpha : 1.0 - alpha;
    const std::size_t n = g.n(), nk = sf.grid.size();
    density_field out{g, pt, coordinate::x, measure::dx(), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.node(i);
        const double w = pt.evaluate(x);
        const double amp = p == 0.0 ? 1.0 : std::pow(pt.derivative(x), p);
        double acc = 0.0;
        for (std::size_t j = 0; j < nk; ++j) {
            const double a = sf.grid.K()[j] * w;
            const auto& v = sf.values[j];
            acc += (std::cos(a) * v.real() - std::sin(a) * v.imag()) * sf.grid.dK()[j];
        }
        out.values[i] = acc * amp * inv_sqrt_2pi;
    }
    return out;
}

double biorthogonality_gram_ratio(const point_transform& pt, double alpha, const grid1d& g,
                                  const std::vector<double>& Ks) {
    (void)alpha; // the f^(1-a) f^a product is alpha-free
    const std::size_t n = g.n(), m = Ks.size();
    std::vector<double> w(n), fw(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.node(i);
        w[i] = pt.evaluate(x);
        fw[i] = pt.derivative(x) * g.h(); // f^(1-a) f^a h
    }
    double min_diag = 0.0, max_off = 0.0;
    bool first = true;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = (Ks[c] - Ks[r]) * w[i];
                re += std::cos(a) * fw[i];
                im += std::sin(a) * fw[i];
            }
            const double mag = std::hypot(re, im) / (2.0 * M_PI);
            if (r == c) {
                min_diag = first ? mag : std::min(min_diag, mag);
                first = false;
            } else {
                max_off = std::max(max_off, mag);
            }
        }
    }
    if (min_diag == 0.0) fail(errc::numerical_failure, "degenerate Gram diagonal");
    return max_off / min_diag;
}

// ---------------------------------------------------------------------------
// Bessel kernels
// ---------------------------------------------------------------------------

std::complex<double> bessel_kernel_value(const bessel_kernel_spec& spec, double k, double x) {
    const double beta = spec.beta;
    const double kx = k * x;
    const double z = std::pow(std::fabs(kx), beta);
    const double p_x = spec.exponent == bessel_exponent::half_shifted ? beta - 0.5
                                                                      : 0.5 * (beta - 1.0);
    const double p_z = p_x / beta; // |kx|^p_x = z^(p_x/beta)
    const double sgn = kx > 0.0 ? 1.0 : (kx < 0.0 ? -1.0 : 0.0);
    const double norm = 0.5 * beta;
    double nu_even, nu_odd;
    if (spec.which == bessel_kernel_spec::branch::phi) {
        nu_even = -1.0 + 0.5 / beta;
        nu_odd = 1.0 - 0.5 / beta;
    } else {
        nu_even = -0.5 / beta;
        nu_odd = 0.5 / beta;
    }
    const double re = norm * bessel_j_pow(nu_even, z, p_z);
    double im = norm * sgn * bessel_j_pow(nu_odd, z, p_z);
    if (spec.which == bessel_kernel_spec::branch::phi) im = -im;
    return {re, im};
}

namespace {

void check_bessel_pre(const bessel_kernel_spec& spec, const point_transform& pt) {
    if (!pt.is_monomial())
        fail(errc::not_monomial, "Bessel-kernel transforms are derived for monomial W only");
    if (!(spec.beta >= 0.25))
        fail(errc::beta_too_small, "Bessel-kernel transforms need beta >= 1/4");
}

} // namespace

spectral_field bessel_forward(const density_field& rho, const bessel_kernel_spec& spec,
                              const kgrid& kg) {
    check_bessel_pre(spec, rho.transform);
    require_truncation_safe(rho.values);
    const std::size_t n = rho.grid.n(), nk = kg.size();
    const bool conj = spec.which == bessel_kernel_spec::branch::phi_tilde;
    spectral_field sf{kg, std::vector<std::complex<double>>(nk)};
    for (std::size_t j = 0; j < nk; ++j) {
        const double k = kg.k()[j];
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> kv = bessel_kernel_value(spec, k, rho.grid.node(i));
            if (conj) kv = std::conj(kv);
            acc += kv * (rho.values[i] * rho.grid.h());
        }
        sf.values[j] = acc;
    }
    return sf;
}

density_field bessel_inverse(const spectral_field& sf, const bessel_kernel_spec& spec,
                             const grid1d& g, const point_transform& pt) {
    check_bessel_pre(spec, pt);
    const std::size_t n = g.n(), nk = sf.grid.size();
    const bool conj = spec.which == bessel_kernel_spec::branch::phi;
    density_field out{g, pt, coordinate::x, measure::dx(), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.node(i);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < nk; ++j) {
            std::complex<double> kv = bessel_kernel_value(spec, sf.grid.k()[j], x);
            if (conj) kv = std::conj(kv);
            acc += kv * sf.values[j] * sf.grid.dk()[j];
        }
        out.values[i] = acc.real();
    }
    return out;
}

// ---------------------------------------------------------------------------

double eigenrelation_residual(const assembled_operator& op,
                              const std::vector<std::complex<double>>& kernel_samples, double K,
                              std::size_t margin, std::size_t skip_center_cells) {
    const std::size_t n = op.grid().n();
    const auto img = op.apply(kernel_samples);
    double kmax = 0.0;
    for (const auto& v : kernel_samples) kmax = std::max(kmax, std::abs(v));
    if (kmax == 0.0) fail(errc::numerical_failure, "zero kernel sample vector");
    const double K2 = K * K * op.spec().diffusion;
    double worst = 0.0;
    const double x_cut = skip_center_cells == 0
                             ? -1.0
                             : static_cast<double>(skip_center_cells) * op.grid().h();
    for (std::size_t i = margin; i + margin < n; ++i) {
        if (std::fabs(op.grid().node(i)) < x_cut) continue;
        worst = std::max(worst, std::abs(img[i] + K2 * kernel_samples[i]));
    }
    return worst / kmax;
}

} // namespace ptdiff
