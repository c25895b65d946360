#pragma once

// Worked finite schemes. Labels are 0-based: Pauli and kappa labels 0..3
// correspond to sigma_0..sigma_3; exotic labels 0..3 correspond to the Weyl
// basis e_1..e_4.
//
// The printed_* functions return the matrices exactly as tabulated in the
// source literature. They are ground truth for tests and demos, not inputs
// to the constructions.

#include "starkernel/algebra.hpp"
#include "starkernel/realization.hpp"

#include <array>
#include <string>

namespace starkernel {

struct CatalogEntry {
    std::string name;
    StructureConstants constants;
    Scheme scheme;
    std::string notes;
};

/// D_j = sigma_j / 2 and U_j = sigma_j. The source pairing is 2 Tr with
/// dequantizers sigma_j / 2; the factor 2 is folded into U_j.
CatalogEntry pauli_scheme();

/// Weyl-basis quantizers of the exotic 2x2 product, with dequantizers
/// U_{0,3} = D_{0,3}^T / 2 and U_{1,2} = D_{1,2}^T.
CatalogEntry exotic_scheme();

/// Regular representation of the kappa product a o b = a kappa b, with
/// min-norm dequantizers. Throws RankError (naming s) when kappa is singular
/// enough to make the quantizers linearly dependent.
CatalogEntry kappa_scheme(const std::array<double, 4> &s);

/// K_s with (K_s)_jk = Tr[sigma_j sigma_k sigma_s] / 4, as printed.
std::array<CMatrix, 4> printed_pauli_kernel_slices();
/// Exotic quantizers D_1..D_4, as printed.
std::array<CMatrix, 4> printed_exotic_quantizers();
/// Exotic dequantizers U_1..U_4, as printed (U_{1,4} = D^T/2, U_{2,3} = D^T).
std::array<CMatrix, 4> printed_exotic_dequantizers();
/// The kappa quantizer family D_0..D_3 as printed, as functions of s.
/// These equal the transposes of regular_representation(kappa constants).
std::array<CMatrix, 4> printed_kappa_quantizers(const std::array<double, 4> &s);

/// The exotic product on 2x2 matrices, evaluated directly.
CMatrix exotic_product(const CMatrix &a, const CMatrix &b);

} // namespace starkernel
