#pragma once

// Quantizer/dequantizer schemes on a finite label set.
//
// A scheme holds quantizers D_j and dequantizers U_j (N x N each) with the
// plain trace duality Tr[U_j D_k] = delta_jk. When a source pairing uses a
// weight w (<A,B> = w Tr[AB]), the stored dequantizer is w times the
// source's, so one duality convention holds everywhere.

#include "starkernel/algebra.hpp"
#include "starkernel/cmatrix.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace starkernel {

/// Star-product kernel K[j][k][l] = Tr[D_j D_k U_l]; same layout as
/// StructureConstants.
using KernelTensor = StructureConstants;

class Scheme {
  public:
    /// Validates shapes and the duality residual (<= duality_tol).
    Scheme(std::string name, std::vector<CMatrix> quantizers, std::vector<CMatrix> dequantizers,
           std::optional<StructureConstants> constants = std::nullopt,
           double duality_tol = 1e-10);

    const std::string &name() const noexcept { return name_; }
    std::size_t labels() const noexcept { return quantizers_.size(); }
    std::size_t hilbert_dim() const noexcept { return quantizers_.front().rows(); }
    const std::vector<CMatrix> &quantizers() const noexcept { return quantizers_; }
    const std::vector<CMatrix> &dequantizers() const noexcept { return dequantizers_; }
    const std::optional<StructureConstants> &constants() const noexcept { return constants_; }

  private:
    std::string name_;
    std::vector<CMatrix> quantizers_;
    std::vector<CMatrix> dequantizers_;
    std::optional<StructureConstants> constants_;
};

/// Left regular representation: (D_g)[a][b] = C_{g b}^a (row = output
/// component a, column = input component b).
std::vector<CMatrix> regular_representation(const StructureConstants &c);

/// max_{j,k} || D_j D_k - sum_l C_jk^l D_l ||_F
double verify_quantizers(const StructureConstants &c, std::span<const CMatrix> ds);

/// Minimum-norm dequantizers with Tr[U_k D_j] = delta_kj. Throws RankError
/// (Gram rank vs label count) when the quantizers are linearly dependent.
std::vector<CMatrix> solve_dequantizers(std::span<const CMatrix> ds);

/// max_{j,k} |Tr[U_j D_k] - delta_jk|
double duality_residual(std::span<const CMatrix> us, std::span<const CMatrix> ds);

/// Regular representation plus min-norm dequantizers; the result carries c.
Scheme scheme_from_constants(const StructureConstants &c, std::string name = "regular");

KernelTensor kernel_from_scheme(const Scheme &s);

/// f_j = Tr[U_j a]
std::vector<Complex> to_symbol(const CMatrix &a, const Scheme &s);
/// sum_j f_j D_j
CMatrix from_symbol(std::span<const Complex> f, const Scheme &s);
/// g_j = Tr[D_j a]
std::vector<Complex> to_dual_symbol(const CMatrix &a, const Scheme &s);

/// Quantizers and dequantizers exchanged. The source constants are not
/// carried over; the dual kernel is kernel_from_scheme(dualize(s)).
Scheme dualize(const Scheme &s);

/// sum_j Tr[U_j rho] Tr[D_j a]. Equals Tr[rho a] whenever rho lies in the
/// quantizer span or a lies in the dequantizer span (always, for a complete
/// scheme).
Complex expectation_pairing(const CMatrix &rho, const CMatrix &a, const Scheme &s);

/// max_{j,k} || U_j U_k - sum_l d_jk^l U_l ||_F with d the dual kernel;
/// informational (min-norm dequantizers need not close).
double dequantizer_closure_residual(const Scheme &s);

} // namespace starkernel
