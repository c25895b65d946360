#pragma once

// Symplectic tomography on a truncated Fock space.
//
// Quantizer D(X, mu, nu) = (1/2pi) e^{iX} exp(-i(mu q + nu p)). The
// dequantizer delta(X - mu q - nu p) is never formed as a matrix; tomograms
// go through its Fourier representation
//   f(X, mu, nu) = (1/2pi) int dk e^{ikX} Tr[rho e^{-ik(mu q + nu p)}].

#include "starkernel/fock.hpp"

#include <functional>
#include <span>
#include <vector>

namespace starkernel {

struct TomoPoint {
    double X = 0.0;
    double mu = 1.0;
    double nu = 0.0;
};

/// Samples of f(., mu, nu) on an increasing X grid.
struct TomogramSamples {
    double mu = 1.0;
    double nu = 0.0;
    std::vector<double> xs;
    std::vector<double> values;
    std::vector<std::string> warnings;
};

/// Trapezoid rule in the scaled variable kappa = k r, r = sqrt(mu^2 + nu^2):
/// kappa in [-k_max, k_max] with step `step`. Scaling by r keeps the rule
/// equally accurate for every direction length.
struct KQuadrature {
    double k_max = 12.0;
    double step = 0.01;
    /// Pairing checks raise QuadratureError when the tail estimate exceeds this.
    double tail_tol = 1e-8;
};

/// exp(-i(mu q + nu p)), with a trust warning when r/sqrt(2) > sqrt(N)/4.
TruncatedOperator tomographic_unitary(const FockSpace &fs, double mu, double nu);

/// (1/2pi) e^{iX} exp(-i(mu q + nu p)). Throws ContractError for mu = nu = 0.
TruncatedOperator tomographic_quantizer(const FockSpace &fs, const TomoPoint &x);

/// Probe-sector norm of
///   D(x1) D(x2) - (1/2pi) e^{(i/2)(nu1 mu2 - nu2 mu1)} D(X1+X2, mu1+mu2, nu1+nu2).
/// The right-hand phase comes from [q, p] = i; derivation in
/// docs/tomography_reduction.md.
double kernel_identity_residual(const FockSpace &fs, const TomoPoint &x1, const TomoPoint &x2,
                                const TruncationPolicy &policy = {});

/// Tomogram of rho on the grid xs. rho must be Hermitian with unit trace
/// (1e-10); xs strictly increasing. Parallel over X points.
TomogramSamples tomogram(const FockSpace &fs, const CMatrix &rho, double mu, double nu,
                         std::span<const double> xs, const KQuadrature &quad = {});

/// Trapezoid integral of the samples over their grid.
double tomogram_normalization(const TomogramSamples &s);

/// Closed form for the Fock state |n>: e^{-y^2} H_n(y)^2 / (sqrt(pi) r 2^n n!),
/// y = X/r, r = sqrt(mu^2 + nu^2).
double fock_tomogram_oracle(std::size_t n, double X, double mu, double nu);

/// Four-point cubic (Lagrange) interpolation on an increasing grid. Throws
/// GridCoverageError when x lies outside [xs.front(), xs.back()].
double cubic_interpolate(std::span<const double> xs, std::span<const double> ys, double x);

/// max over base.xs of | |lambda| f_scaled(lambda X) - f_base(X) |, where
/// `scaled` holds samples at (lambda mu, lambda nu). Throws ContractError
/// when the directions do not match and GridCoverageError when lambda X
/// leaves the scaled grid.
double homogeneity_residual(const TomogramSamples &base, const TomogramSamples &scaled,
                            double lambda);

/// A test symbol with its partial Fourier transform in X,
/// ft(kappa, mu, nu) = int f(X, mu, nu) e^{-i kappa X} dX.
struct TomographicTestFunction {
    std::function<double(double X, double mu, double nu)> value;
    std::function<Complex(double kappa, double mu, double nu)> fourier;
};

/// Ground-state tomogram c (pi r^2)^{-1/2} exp(-X^2/r^2); homogeneous of degree -1.
TomographicTestFunction gaussian_test_function(double scale = 1.0);

/// exp(-X^2 - mu^2 - nu^2); not homogeneous.
TomographicTestFunction nonhomogeneous_test_function();

struct PairingCheck {
    double residual = 0.0;
    Complex reconstructed;
    double expected = 0.0;
    double tail_estimate = 0.0;
};

/// | (1/2pi) int ft(-1, -k mu, -k nu) e^{ikX} dk - f(X, mu, nu) | by the
/// scaled trapezoid rule. Throws QuadratureError when the integrand at the
/// ends of the k range exceeds quad.tail_tol.
PairingCheck homogeneous_pairing_check(const TomographicTestFunction &fn, const TomoPoint &x,
                                       const KQuadrature &quad = {});

} // namespace starkernel
