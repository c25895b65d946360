#include "starkernel/tomography.hpp"
#include "starkernel/linalg.hpp"
#include "starkernel/matrix_io.hpp"
#include "starkernel/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace starkernel {

namespace {

constexpr double kPi = std::numbers::pi;

double direction_length(double mu, double nu) { return std::hypot(mu, nu); }

void require_direction(double mu, double nu, const char *what) {
    if (!std::isfinite(mu) || !std::isfinite(nu))
        throw ContractError(std::string(what) + ": non-finite direction");
    if (mu == 0.0 && nu == 0.0)
        throw ContractError(std::string(what) + ": direction (mu, nu) = (0, 0) is excluded");
}

void require_quadrature(const KQuadrature &quad, const char *what) {
    if (!(quad.k_max > 0.0) || !(quad.step > 0.0) || !std::isfinite(quad.k_max) ||
        quad.k_max / quad.step > 1e7)
        throw ContractError(std::string(what) + ": invalid k-quadrature (k_max " +
                            format_real(quad.k_max) + ", step " + format_real(quad.step) + ")");
}

// exp(-i(mu q + nu p)) without the direction precondition; the zero
// direction gives the identity.
TruncatedOperator unitary_unchecked(const FockSpace &fs, double mu, double nu) {
    TruncatedOperator out{CMatrix::identity(fs.levels()), {}};
    const double z = direction_length(mu, nu) / std::sqrt(2.0);
    if (z > fs.trust_radius())
        out.warnings.push_back("tomographic direction |(mu, nu)|/sqrt(2) = " + format_real(z) +
                               " exceeds trust radius " + format_real(fs.trust_radius()) +
                               " at N = " + std::to_string(fs.levels()));
    if (mu == 0.0 && nu == 0.0)
        return out;
    CMatrix gen = Complex(0.0, -mu) * fs.q();
    gen.add_scaled(Complex(0.0, -nu), fs.p());
    out.matrix = expm_anti_hermitian(gen);
    return out;
}

CMatrix quantizer_unchecked(const FockSpace &fs, const TomoPoint &x) {
    CMatrix u = unitary_unchecked(fs, x.mu, x.nu).matrix;
    u *= std::polar(1.0 / (2.0 * kPi), x.X);
    return u;
}

} // namespace

TruncatedOperator tomographic_unitary(const FockSpace &fs, double mu, double nu) {
    require_direction(mu, nu, "tomographic_unitary");
    return unitary_unchecked(fs, mu, nu);
}

TruncatedOperator tomographic_quantizer(const FockSpace &fs, const TomoPoint &x) {
    require_direction(x.mu, x.nu, "tomographic_quantizer");
    if (!std::isfinite(x.X))
        throw ContractError("tomographic_quantizer: non-finite X");
    TruncatedOperator out = unitary_unchecked(fs, x.mu, x.nu);
    out.matrix *= std::polar(1.0 / (2.0 * kPi), x.X);
    return out;
}

double kernel_identity_residual(const FockSpace &fs, const TomoPoint &x1, const TomoPoint &x2,
                                const TruncationPolicy &policy) {
    require_direction(x1.mu, x1.nu, "kernel_identity_residual");
    require_direction(x2.mu, x2.nu, "kernel_identity_residual");
    const CMatrix lhs = quantizer_unchecked(fs, x1) * quantizer_unchecked(fs, x2);
    const TomoPoint sum{x1.X + x2.X, x1.mu + x2.mu, x1.nu + x2.nu};
    const Complex phase =
        std::polar(1.0 / (2.0 * kPi), 0.5 * (x1.nu * x2.mu - x2.nu * x1.mu));
    return sector_norm(lhs - phase * quantizer_unchecked(fs, sum), policy);
}

TomogramSamples tomogram(const FockSpace &fs, const CMatrix &rho, double mu, double nu,
                         std::span<const double> xs, const KQuadrature &quad) {
    require_direction(mu, nu, "tomogram");
    require_quadrature(quad, "tomogram");
    const std::size_t n = fs.levels();
    if (rho.rows() != n || rho.cols() != n)
        throw ShapeError("tomogram: density " + rho.shape_string() + " on a space of " +
                         std::to_string(n) + " levels");
    require_finite(rho, "tomogram");
    if (max_abs_diff(rho, mat_adjoint(rho)) > 1e-10)
        throw ContractError("tomogram: density is not Hermitian");
    if (std::abs(mat_trace(rho) - 1.0) > 1e-10)
        throw ContractError("tomogram: density trace " + format_real(mat_trace(rho).real()) +
                            " is not 1");
    if (xs.empty())
        throw ContractError("tomogram: empty X grid");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]))
            throw ContractError("tomogram: non-finite X grid value");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw ContractError("tomogram: X grid is not strictly increasing at index " +
                                std::to_string(i));
    }

    TomogramSamples out;
    out.mu = mu;
    out.nu = nu;
    out.xs.assign(xs.begin(), xs.end());
    out.values.assign(xs.size(), 0.0);
    if (const double z = direction_length(mu, nu) / std::sqrt(2.0); z > fs.trust_radius())
        out.warnings.push_back("tomographic direction |(mu, nu)|/sqrt(2) = " + format_real(z) +
                               " exceeds trust radius " + format_real(fs.trust_radius()));

    // e^{-ik(mu q + nu p)} = V e^{-ik Lambda} V^dagger, so the characteristic
    // function is chi(k) = sum_m w_m e^{-ik lambda_m} with w_m = <v_m|rho|v_m>.
    CMatrix h = mu * fs.q();
    h.add_scaled(nu, fs.p());
    const HermitianEigen eig = eigh(h);
    std::vector<double> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex s{};
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                s += std::conj(eig.vectors(a, m)) * rho(a, b) * eig.vectors(b, m);
        w[m] = s.real();
    }

    const double r = direction_length(mu, nu);
    const auto half = static_cast<std::size_t>(std::llround(quad.k_max / quad.step));
    const double dk = quad.step / r;
    std::vector<Complex> chi(half + 1);
    for (std::size_t i = 0; i <= half; ++i) {
        const double k = static_cast<double>(i) * dk;
        for (std::size_t m = 0; m < n; ++m)
            chi[i] += std::polar(w[m], -k * eig.values[m]);
    }

    // Symmetric grid: the +k and -k nodes pair into 2 Re[chi(k) e^{ikX}].
    parallel_for(xs.size(), [&](std::size_t j) {
        double acc = 0.5 * chi[0].real();
        for (std::size_t i = 1; i <= half; ++i) {
            const double k = static_cast<double>(i) * dk;
            const double edge = i == half ? 0.5 : 1.0;
            acc += edge * (chi[i] * std::polar(1.0, k * xs[j])).real();
        }
        out.values[j] = 2.0 * acc * dk / (2.0 * kPi);
    });

    const double lowest = *std::min_element(out.values.begin(), out.values.end());
    if (lowest < -1e-9)
        out.warnings.push_back("tomogram: negative sample " + format_real(lowest));
    return out;
}

double tomogram_normalization(const TomogramSamples &s) {
    double sum = 0.0;
    for (std::size_t i = 1; i < s.xs.size(); ++i)
        sum += 0.5 * (s.values[i] + s.values[i - 1]) * (s.xs[i] - s.xs[i - 1]);
    return sum;
}

double fock_tomogram_oracle(std::size_t n, double X, double mu, double nu) {
    require_direction(mu, nu, "fock_tomogram_oracle");
    const double r = direction_length(mu, nu);
    const double y = X / r;
    // Normalized Hermite recurrence: h_n = H_n / sqrt(2^n n!).
    double prev = 0.0, cur = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = std::sqrt(2.0 / (kd + 1.0)) * y * cur - std::sqrt(kd / (kd + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return std::exp(-y * y) * cur * cur / (std::sqrt(kPi) * r);
}

double cubic_interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
    if (xs.size() != ys.size())
        throw ShapeError("cubic_interpolate: grid and values differ in length");
    if (xs.size() < 4)
        throw ContractError("cubic_interpolate: need at least 4 samples");
    if (!(x >= xs.front() && x <= xs.back()))
        throw GridCoverageError("cubic_interpolate: point " + format_real(x) +
                                " lies outside the sampled range [" + format_real(xs.front()) +
                                ", " + format_real(xs.back()) + "]");
    const auto upper = std::upper_bound(xs.begin(), xs.end(), x);
    const auto idx = static_cast<std::ptrdiff_t>(upper - xs.begin());
    const std::size_t first =
        static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx - 2, 0, xs.size() - 4));
    double sum = 0.0;
    for (std::size_t i = first; i < first + 4; ++i) {
        double basis = 1.0;
        for (std::size_t j = first; j < first + 4; ++j)
            if (j != i)
                basis *= (x - xs[j]) / (xs[i] - xs[j]);
        sum += basis * ys[i];
    }
    return sum;
}

double homogeneity_residual(const TomogramSamples &base, const TomogramSamples &scaled,
                            double lambda) {
    if (lambda == 0.0 || !std::isfinite(lambda))
        throw ContractError("homogeneity_residual: lambda must be finite and nonzero");
    const double scale = std::max(1.0, std::abs(lambda) * direction_length(base.mu, base.nu));
    if (std::abs(scaled.mu - lambda * base.mu) > 1e-12 * scale ||
        std::abs(scaled.nu - lambda * base.nu) > 1e-12 * scale)
        throw ContractError("homogeneity_residual: scaled samples are at (" +
                            format_real(scaled.mu) + ", " + format_real(scaled.nu) +
                            "), expected lambda times (" + format_real(base.mu) + ", " +
                            format_real(base.nu) + ")");
    double worst = 0.0;
    for (std::size_t i = 0; i < base.xs.size(); ++i) {
        const double f = cubic_interpolate(scaled.xs, scaled.values, lambda * base.xs[i]);
        worst = std::max(worst, std::abs(std::abs(lambda) * f - base.values[i]));
    }
    return worst;
}

TomographicTestFunction gaussian_test_function(double scale) {
    return {
        [scale](double X, double mu, double nu) {
            const double r2 = mu * mu + nu * nu;
            return scale * std::exp(-X * X / r2) / std::sqrt(kPi * r2);
        },
        [scale](double kappa, double mu, double nu) {
            return Complex(scale * std::exp(-kappa * kappa * (mu * mu + nu * nu) / 4.0), 0.0);
        },
    };
}

TomographicTestFunction nonhomogeneous_test_function() {
    return {
        [](double X, double mu, double nu) { return std::exp(-X * X - mu * mu - nu * nu); },
        [](double kappa, double mu, double nu) {
            return Complex(std::sqrt(kPi) * std::exp(-kappa * kappa / 4.0 - mu * mu - nu * nu),
                           0.0);
        },
    };
}

PairingCheck homogeneous_pairing_check(const TomographicTestFunction &fn, const TomoPoint &x,
                                       const KQuadrature &quad) {
    require_direction(x.mu, x.nu, "homogeneous_pairing_check");
    require_quadrature(quad, "homogeneous_pairing_check");
    if (!fn.value || !fn.fourier)
        throw ContractError("homogeneous_pairing_check: test function is incomplete");
    const double r = direction_length(x.mu, x.nu);
    const auto half = static_cast<std::ptrdiff_t>(std::llround(quad.k_max / quad.step));
    const double dk = quad.step / r;
    auto integrand = [&](double k) {
        return fn.fourier(-1.0, -k * x.mu, -k * x.nu) * std::polar(1.0, k * x.X);
    };

    PairingCheck out;
    const double k_end = static_cast<double>(half) * dk;
    out.tail_estimate =
        (std::abs(integrand(k_end)) + std::abs(integrand(-k_end))) / (2.0 * kPi * r);
    if (!std::isfinite(out.tail_estimate) || out.tail_estimate > quad.tail_tol)
        throw QuadratureError("homogeneous_pairing_check: integrand has not decayed at |k| = " +
                                  format_real(k_end) + " (tail estimate " +
                                  format_real(out.tail_estimate) + ")",
                              out.tail_estimate);

    Complex acc{};
    for (std::ptrdiff_t i = -half; i <= half; ++i) {
        const double edge = (i == -half || i == half) ? 0.5 : 1.0;
        acc += edge * integrand(static_cast<double>(i) * dk);
    }
    out.reconstructed = acc * dk / (2.0 * kPi);
    out.expected = fn.value(x.X, x.mu, x.nu);
    out.residual = std::abs(out.reconstructed - out.expected);
    return out;
}

} // namespace starkernel
