#include "starkernel/fock.hpp"
#include "starkernel/linalg.hpp"
#include "starkernel/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace starkernel {

using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

void warn_if_outside(const FockSpace &fs, Complex z, std::vector<std::string> &warnings) {
    if (std::abs(z) > fs.trust_radius())
        warnings.push_back("displacement |z| = " + format_real(std::abs(z)) +
                           " exceeds trust radius " + format_real(fs.trust_radius()) + " at N = " +
                           std::to_string(fs.levels()));
}

// Product of right-multiplying by the parity: flips the sign of odd columns.
CMatrix times_parity(CMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 1; j < m.cols(); j += 2)
            m(i, j) = -m(i, j);
    return m;
}

// D(2z) P for a phase point.
CMatrix displaced_parity(const FockSpace &fs, const PhasePoint &x,
                         std::vector<std::string> &warnings) {
    TruncatedOperator d = displacement(fs, 2.0 * x.z());
    warnings.insert(warnings.end(), d.warnings.begin(), d.warnings.end());
    return times_parity(std::move(d.matrix));
}

// e^{-1/x} for x > 0, else 0.
double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

} // namespace

FockSpace::FockSpace(std::size_t levels)
    : n_(levels), a_(levels, levels), adag_(levels, levels), q_(levels, levels),
      p_(levels, levels) {
    if (levels < 2)
        throw ShapeError("FockSpace: need at least 2 levels, got " + std::to_string(levels));
    for (std::size_t n = 1; n < levels; ++n) {
        const double s = std::sqrt(static_cast<double>(n));
        a_(n - 1, n) = s;
        adag_(n, n - 1) = s;
    }
    const double r = 1.0 / std::sqrt(2.0);
    q_ = r * (a_ + adag_);
    p_ = Complex(0.0, -r) * (a_ - adag_);
}

double FockSpace::trust_radius() const noexcept {
    return std::sqrt(static_cast<double>(n_)) / 4.0;
}

Complex PhasePoint::z() const noexcept { return Complex(q, p) / std::sqrt(2.0); }

PhasePoint PhasePoint::from_z(Complex z) noexcept {
    return {std::sqrt(2.0) * z.real(), std::sqrt(2.0) * z.imag()};
}

TruncatedOperator displacement(const FockSpace &fs, Complex z) {
    TruncatedOperator out{CMatrix::identity(fs.levels()), {}};
    warn_if_outside(fs, z, out.warnings);
    if (z == Complex{})
        return out;
    CMatrix gen = z * fs.adag();
    gen.add_scaled(-std::conj(z), fs.a());
    out.matrix = expm_anti_hermitian(gen);
    return out;
}

CMatrix parity(const FockSpace &fs) {
    std::vector<Complex> diag(fs.levels());
    for (std::size_t n = 0; n < diag.size(); ++n)
        diag[n] = n % 2 == 0 ? 1.0 : -1.0;
    return CMatrix::diagonal(diag);
}

TruncatedOperator weyl_dequantizer(const FockSpace &fs, const PhasePoint &x) {
    TruncatedOperator out{CMatrix(fs.levels(), fs.levels()), {}};
    out.matrix = 2.0 * displaced_parity(fs, x, out.warnings);
    return out;
}

TruncatedOperator weyl_quantizer(const FockSpace &fs, const PhasePoint &x) {
    TruncatedOperator out = weyl_dequantizer(fs, x);
    out.matrix *= 1.0 / (2.0 * kPi);
    return out;
}

double sector_norm(const CMatrix &m, const TruncationPolicy &policy) {
    const std::size_t k = std::min({policy.probe_levels, m.rows(), m.cols()});
    if (k == 0)
        throw ContractError("sector_norm: probe sector is empty");
    return frobenius_norm(leading_block(m, k));
}

double sector_unitarity_residual(const CMatrix &m, const TruncationPolicy &policy) {
    return sector_norm(mat_adjoint(m) * m - CMatrix::identity(m.rows()), policy);
}

double sector_hermiticity_residual(const CMatrix &m, const TruncationPolicy &policy) {
    return sector_norm(m - mat_adjoint(m), policy);
}

double groenewold_identity_residual(const FockSpace &fs, Complex z1, Complex z2,
                                    const TruncationPolicy &policy) {
    std::vector<std::string> ignored;
    const CMatrix lhs = displaced_parity(fs, PhasePoint::from_z(z1), ignored) *
                        displaced_parity(fs, PhasePoint::from_z(z2), ignored);
    const Complex phase =
        std::exp(2.0 * (std::conj(z1) * z2 - z1 * std::conj(z2)));
    const CMatrix rhs = phase * displacement(fs, 2.0 * (z1 - z2)).matrix;
    return sector_norm(lhs - rhs, policy);
}

std::vector<double> trace_window(std::size_t levels, const TruncationPolicy &policy) {
    const std::size_t buffer = policy.buffer_for(levels);
    if (levels < 2 * buffer + 4)
        throw ContractError("trace_window: " + std::to_string(levels) +
                            " levels leave no room for a window with buffer " +
                            std::to_string(buffer));
    const double cutoff = static_cast<double>(levels - 2 * buffer);
    const double start = cutoff / 2.0;
    std::vector<double> w(levels);
    for (std::size_t n = 0; n < levels; ++n) {
        const double t = (static_cast<double>(n) - start) / (cutoff - start);
        if (t <= 0.0)
            w[n] = 1.0;
        else if (t >= 1.0)
            w[n] = 0.0;
        else
            w[n] = bump(1.0 - t) / (bump(1.0 - t) + bump(t));
    }
    return w;
}

Complex windowed_trace(const CMatrix &m, const TruncationPolicy &policy) {
    if (!m.is_square())
        throw ShapeError("windowed_trace: matrix " + m.shape_string() + " is not square");
    const std::vector<double> w = trace_window(m.rows(), policy);
    Complex sum{};
    for (std::size_t n = 0; n < w.size(); ++n)
        sum += w[n] * m(n, n);
    return sum;
}

Complex moyal_kernel_trace(const FockSpace &fs, const PhasePoint &x1, const PhasePoint &x2,
                           const PhasePoint &x3, const TruncationPolicy &policy) {
    // D(x1) D(x2) U(x3) = (2 / pi^2) D(2z1)P D(2z2)P D(2z3)P
    std::vector<std::string> ignored;
    const CMatrix prod = displaced_parity(fs, x1, ignored) * displaced_parity(fs, x2, ignored) *
                         displaced_parity(fs, x3, ignored);
    return (2.0 / (kPi * kPi)) * windowed_trace(prod, policy);
}

Complex moyal_dual_kernel_trace(const FockSpace &fs, const PhasePoint &x1, const PhasePoint &x2,
                                const PhasePoint &x3, const TruncationPolicy &policy) {
    // U(x1) U(x2) D(x3) = (4 / pi) D(2z1)P D(2z2)P D(2z3)P
    std::vector<std::string> ignored;
    const CMatrix prod = displaced_parity(fs, x1, ignored) * displaced_parity(fs, x2, ignored) *
                         displaced_parity(fs, x3, ignored);
    return (4.0 / kPi) * windowed_trace(prod, policy);
}

Complex moyal_kernel_oracle(const PhasePoint &x1, const PhasePoint &x2, const PhasePoint &x3) {
    const Complex z1 = x1.z(), z2 = x2.z(), z3 = x3.z();
    const Complex e = std::conj(z1) * z2 - z1 * std::conj(z2) + z1 * std::conj(z3) -
                      std::conj(z1) * z3 - z2 * std::conj(z3) + std::conj(z2) * z3;
    return std::exp(2.0 * e) / (kPi * kPi);
}

QuadratureRule gauss_hermite(std::size_t n) {
    if (n == 0)
        throw ContractError("gauss_hermite: need at least one node");
    CMatrix jacobi(n, n);
    for (std::size_t i = 1; i < n; ++i) {
        const double b = std::sqrt(static_cast<double>(i) / 2.0);
        jacobi(i - 1, i) = b;
        jacobi(i, i - 1) = b;
    }
    const HermitianEigen eig = eigh(jacobi);
    QuadratureRule rule;
    rule.nodes = eig.values;
    for (std::size_t k = 0; k < n; ++k)
        rule.weights.push_back(std::sqrt(kPi) * std::norm(eig.vectors(0, k)));
    return rule;
}

SmearedDualityResult smeared_duality_check(const FockSpace &fs, const PhasePoint &x,
                                           const PhasePoint &centre, double width,
                                           std::size_t nodes, const TruncationPolicy &policy) {
    if (!(width > 0.0))
        throw ContractError("smeared_duality_check: width must be positive");
    const QuadratureRule gh = gauss_hermite(nodes);
    // phi(x') = exp(-|x' - c|^2 / (2 w^2)) / (2 pi w^2); substitute x' = c + sqrt(2) w t
    // per axis so that each axis integral becomes (1/sqrt(pi)) sum_i w_i g(t_i).
    const double step = std::sqrt(2.0) * width;
    CMatrix g(fs.levels(), fs.levels());
    std::vector<std::string> ignored;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
            const PhasePoint xp{centre.q + step * gh.nodes[i], centre.p + step * gh.nodes[j]};
            const double weight = gh.weights[i] * gh.weights[j] / kPi;
            // D(x') = (1/pi) D(2z')P
            g.add_scaled(weight / kPi, displaced_parity(fs, xp, ignored));
        }
    SmearedDualityResult r;
    r.value = windowed_trace(weyl_dequantizer(fs, x).matrix * g, policy);
    const double dq = x.q - centre.q, dp = x.p - centre.p;
    r.expected = std::exp(-(dq * dq + dp * dp) / (2.0 * width * width)) /
                 (2.0 * kPi * width * width);
    r.relative_error = std::abs(r.value - r.expected) / std::max(r.expected, 1e-300);
    return r;
}

} // namespace starkernel
