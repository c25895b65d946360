#pragma once

#include "starkernel/cmatrix.hpp"

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace starkernel {

/// Structure constants C_jk^l of a product e_j . e_k = sum_l C_jk^l e_l on an
/// n-dimensional space, stored dense as [j][k][l].
class StructureConstants {
  public:
    explicit StructureConstants(std::size_t dim);
    StructureConstants(std::size_t dim, std::vector<Complex> dense);

    std::size_t dim() const noexcept { return dim_; }

    Complex &operator()(std::size_t j, std::size_t k, std::size_t l) noexcept {
        return c_[(j * dim_ + k) * dim_ + l];
    }
    const Complex &operator()(std::size_t j, std::size_t k, std::size_t l) const noexcept {
        return c_[(j * dim_ + k) * dim_ + l];
    }
    std::span<const Complex> dense() const noexcept { return c_; }

    /// The product of two coordinate vectors: (f*g)_l = sum_jk f_j C_jk^l g_k.
    std::vector<Complex> multiply(std::span<const Complex> f, std::span<const Complex> g) const;

    /// Opposite product: C^op_jk^l = C_kj^l.
    StructureConstants opposite() const;

    bool operator==(const StructureConstants &) const = default;

  private:
    std::size_t dim_;
    std::vector<Complex> c_;
};

double max_abs_diff(const StructureConstants &a, const StructureConstants &b);

struct AssociativityReport {
    double max_residual = 0.0;
    /// (j, k, m, s) where |sum_t C_jk^t C_tm^s - sum_t C_jt^s C_km^t| peaks.
    std::array<std::size_t, 4> worst_indices{};
    bool passed = true;
};

/// Scans every (j,k,m,s); always returns a report.
AssociativityReport check_associativity(const StructureConstants &c, double tol = 1e-12);

/// Bilinear product used to build constants from a matrix basis.
using MatrixProduct = std::function<CMatrix(const CMatrix &, const CMatrix &)>;

/// Expands basis_j * basis_k over the basis using the Gram matrix of the
/// pairing weight * Tr[b_j^dagger b_k]. Throws RankError when the basis is
/// linearly dependent and ContractError when a product leaves the span by
/// more than closure_tol (relative to the product's norm).
StructureConstants from_matrix_basis(std::span<const CMatrix> basis, double weight = 1.0,
                                     double closure_tol = 1e-10);
StructureConstants from_matrix_basis(std::span<const CMatrix> basis, const MatrixProduct &product,
                                     double weight = 1.0, double closure_tol = 1e-10);

/// The four Pauli matrices sigma_0..sigma_3.
std::array<CMatrix, 4> pauli_matrices();

/// Levi-Civita symbol on {1,2,3} with eps_123 = +1; zero if any index is 0.
int levi_civita(std::size_t j, std::size_t k, std::size_t m) noexcept;

/// The Weyl-basis constants of the product
///   [a b; c d] . [a' b'; c' d'] = [aa', ab' + bd'; ca' + dc', dd'],
/// six nonzero entries (0-based): (0,0,0) (0,1,1) (1,3,1) (2,0,2) (3,2,2) (3,3,3).
StructureConstants exotic_structure_constants();

/// Constants of a o b = a kappa b on the Pauli basis, kappa = sum_a s^a sigma_a,
/// from the closed-form expressions.
StructureConstants kappa_structure_constants(const std::array<double, 4> &s);

} // namespace starkernel
