#pragma once

#include "starkernel/cmatrix.hpp"

#include <span>
#include <vector>

namespace starkernel {

/// Solution of a (possibly singular) Hermitian positive semidefinite system.
struct GramSolve {
    std::vector<Complex> x;
    std::size_t rank = 0;
};

/// Solves g x = rhs by complete-pivoting elimination. Pivots below
/// rank_tol * max|g_ii| stop the elimination; the remaining unknowns are set
/// to zero. No consistency check is made here.
GramSolve solve_gram(const CMatrix &g, std::span<const Complex> rhs, double rank_tol = 1e-12);

struct MinNormOptions {
    double rank_tol = 1e-12;
    /// Maximum allowed |Tr[R_j X] - rhs_j|, scaled by max(1, |rhs|_inf).
    double residual_tol = 1e-10;
};

/// Minimum-Frobenius-norm X with Tr[R_j X] = rhs_j for all j. X lies in the
/// span of the adjoints R_j^dagger. Throws ShapeError on mismatched inputs and
/// InfeasibleError (carrying the Gram rank) when the constraints are
/// inconsistent.
CMatrix min_norm_solve(std::span<const CMatrix> constraint_rows, std::span<const Complex> rhs,
                       const MinNormOptions &opts = {});

/// exp(h) for anti-Hermitian h by scaling and squaring around a Taylor core.
/// Throws ContractError when ||h + h^dagger||_F > tol * max(1, ||h||_F).
CMatrix expm_anti_hermitian(const CMatrix &h, double tol = 1e-12);

/// Eigendecomposition of a Hermitian matrix: a = V diag(values) V^dagger,
/// values ascending, eigenvectors in the columns of V.
struct HermitianEigen {
    std::vector<double> values;
    CMatrix vectors;
};

/// Cyclic complex Jacobi. Throws ContractError when a is not Hermitian
/// within tol * max(1, ||a||_F).
HermitianEigen eigh(const CMatrix &a, double tol = 1e-12);

} // namespace starkernel
