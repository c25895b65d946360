#pragma once

// Weyl-Wigner-Moyal quantizer/dequantizer on a truncated Fock space, hbar = 1.
//
// Truncation policy. A displacement exp(z a^dagger - z* a) is trusted for
// |z| <= sqrt(N)/4. Operators requested beyond that radius are still
// computed, and the result carries a warning. Operator identities are
// compared on a fixed low-level probe sector (the first probe_levels Fock
// states), which converges as N grows. Traces use a smooth window that
// drops the top 2*buffer levels (see windowed_trace).

#include "starkernel/cmatrix.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace starkernel {

struct TruncationPolicy {
    /// Leading Fock levels on which operator identities are compared.
    std::size_t probe_levels = 10;
    /// Levels at the top of the space treated as edge artifacts. Zero picks
    /// max(10, N / 4): the band corrupted by truncation widens like sqrt(N)
    /// times the displacement, so a fixed buffer stops converging.
    std::size_t buffer = 0;

    std::size_t buffer_for(std::size_t levels) const noexcept {
        return buffer != 0 ? buffer : std::max<std::size_t>(10, levels / 4);
    }
};

/// An operator computed on a truncated space, with any trust-radius warnings.
struct TruncatedOperator {
    CMatrix matrix;
    std::vector<std::string> warnings;
};

/// Immutable ladder operators on the first N Fock levels.
class FockSpace {
  public:
    explicit FockSpace(std::size_t levels);

    std::size_t levels() const noexcept { return n_; }
    /// <m|a|n> = sqrt(n) delta_{m,n-1}
    const CMatrix &a() const noexcept { return a_; }
    const CMatrix &adag() const noexcept { return adag_; }
    /// q = (a + a^dagger)/sqrt(2)
    const CMatrix &q() const noexcept { return q_; }
    /// p = (a - a^dagger)/(i sqrt(2))
    const CMatrix &p() const noexcept { return p_; }
    /// sqrt(N)/4
    double trust_radius() const noexcept;

  private:
    std::size_t n_;
    CMatrix a_, adag_, q_, p_;
};

/// Phase-space point; z = (q + ip)/sqrt(2).
struct PhasePoint {
    double q = 0.0;
    double p = 0.0;

    Complex z() const noexcept;
    static PhasePoint from_z(Complex z) noexcept;
};

/// exp(z a^dagger - z* a).
TruncatedOperator displacement(const FockSpace &fs, Complex z);

/// diag((-1)^n).
CMatrix parity(const FockSpace &fs);

/// U(z) = 2 D(2z) P, the displaced parity.
TruncatedOperator weyl_dequantizer(const FockSpace &fs, const PhasePoint &x);

/// D(z) = U(z) / (2 pi).
TruncatedOperator weyl_quantizer(const FockSpace &fs, const PhasePoint &x);

/// Frobenius norm of the probe-sector block of m.
double sector_norm(const CMatrix &m, const TruncationPolicy &policy = {});

/// || M^dagger M - I || on the probe sector.
double sector_unitarity_residual(const CMatrix &m, const TruncationPolicy &policy = {});

/// || M - M^dagger || on the probe sector.
double sector_hermiticity_residual(const CMatrix &m, const TruncationPolicy &policy = {});

/// Probe-sector norm of D(2 z1) P D(2 z2) P - e^{2(z1* z2 - z1 z2*)} D(2(z1 - z2)).
double groenewold_identity_residual(const FockSpace &fs, Complex z1, Complex z2,
                                    const TruncationPolicy &policy = {});

/// Level weights of the smooth trace window: 1 below cutoff/2, a C-infinity
/// step down to 0 at cutoff = N - 2*buffer, 0 above. Throws ContractError
/// when N leaves no room for the window.
std::vector<double> trace_window(std::size_t levels, const TruncationPolicy &policy = {});

/// sum_n w_n M_nn with the weights of trace_window. The plain truncated trace
/// of a displaced parity is exactly 0 or 1 (by the parity of N); the window
/// recovers the infinite-dimensional value.
Complex windowed_trace(const CMatrix &m, const TruncationPolicy &policy = {});

/// Tr[D(x1) D(x2) U(x3)], windowed.
Complex moyal_kernel_trace(const FockSpace &fs, const PhasePoint &x1, const PhasePoint &x2,
                           const PhasePoint &x3, const TruncationPolicy &policy = {});

/// Tr[U(x1) U(x2) D(x3)], windowed: the kernel of the dual scheme.
Complex moyal_dual_kernel_trace(const FockSpace &fs, const PhasePoint &x1, const PhasePoint &x2,
                                const PhasePoint &x3, const TruncationPolicy &policy = {});

/// Closed form of the kernel (derivation in docs/moyal_kernel_oracle.md):
/// (1/pi^2) exp[2(z1* z2 - z1 z2* + z1 z3* - z1* z3 - z2 z3* + z2* z3)].
Complex moyal_kernel_oracle(const PhasePoint &x1, const PhasePoint &x2, const PhasePoint &x3);

/// Weak (smeared) duality check: G = int phi(x') D(x') dq' dp' with phi a
/// normalized Gaussian of the given width centred at `centre`, evaluated by
/// tensor Gauss-Hermite quadrature; then Tr[U(x) G] is compared with phi(x).
struct SmearedDualityResult {
    Complex value;
    double expected = 0.0;
    double relative_error = 0.0;
};
SmearedDualityResult smeared_duality_check(const FockSpace &fs, const PhasePoint &x,
                                           const PhasePoint &centre, double width,
                                           std::size_t nodes = 16,
                                           const TruncationPolicy &policy = {});

/// Gauss-Hermite rule (weight e^{-t^2}) by the Golub-Welsch eigenproblem.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_hermite(std::size_t n);

} // namespace starkernel
