#include "starkernel/algebra.hpp"
#include "starkernel/linalg.hpp"
#include "starkernel/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace starkernel {

StructureConstants::StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {
    if (dim == 0)
        throw ShapeError("structure constants need dimension >= 1");
}

StructureConstants::StructureConstants(std::size_t dim, std::vector<Complex> dense)
    : dim_(dim), c_(std::move(dense)) {
    if (dim == 0)
        throw ShapeError("structure constants need dimension >= 1");
    if (c_.size() != dim * dim * dim)
        throw ShapeError("structure constants of dimension " + std::to_string(dim) + " need " +
                         std::to_string(dim * dim * dim) + " entries, got " +
                         std::to_string(c_.size()));
    for (const auto &x : c_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw ContractError("structure constants: non-finite entry");
}

std::vector<Complex> StructureConstants::multiply(std::span<const Complex> f,
                                                  std::span<const Complex> g) const {
    if (f.size() != dim_ || g.size() != dim_)
        throw ShapeError("symbol product: expected length " + std::to_string(dim_));
    std::vector<Complex> out(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex w = f[j] * g[k];
            for (std::size_t l = 0; l < dim_; ++l)
                out[l] += w * (*this)(j, k, l);
        }
    return out;
}

StructureConstants StructureConstants::opposite() const {
    StructureConstants op(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
            for (std::size_t l = 0; l < dim_; ++l)
                op(j, k, l) = (*this)(k, j, l);
    return op;
}

double max_abs_diff(const StructureConstants &a, const StructureConstants &b) {
    if (a.dim() != b.dim())
        throw ShapeError("structure constants of dimension " + std::to_string(a.dim()) +
                         " and " + std::to_string(b.dim()));
    double m = 0.0;
    for (std::size_t i = 0; i < a.dense().size(); ++i)
        m = std::max(m, std::abs(a.dense()[i] - b.dense()[i]));
    return m;
}

AssociativityReport check_associativity(const StructureConstants &c, double tol) {
    const std::size_t n = c.dim();
    struct Slot {
        double residual = 0.0;
        std::array<std::size_t, 4> where{};
    };
    std::vector<Slot> per_j(n);
    parallel_for(n, [&](std::size_t j) {
        Slot best;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t m = 0; m < n; ++m)
                for (std::size_t s = 0; s < n; ++s) {
                    Complex lhs{}, rhs{};
                    for (std::size_t t = 0; t < n; ++t) {
                        lhs += c(j, k, t) * c(t, m, s);
                        rhs += c(j, t, s) * c(k, m, t);
                    }
                    const double r = std::abs(lhs - rhs);
                    if (r > best.residual)
                        best = {r, {j, k, m, s}};
                }
        per_j[j] = best;
    });
    AssociativityReport rep;
    for (const auto &slot : per_j)
        if (slot.residual > rep.max_residual) {
            rep.max_residual = slot.residual;
            rep.worst_indices = slot.where;
        }
    rep.passed = rep.max_residual <= tol;
    return rep;
}

StructureConstants from_matrix_basis(std::span<const CMatrix> basis, double weight,
                                     double closure_tol) {
    return from_matrix_basis(
        basis, [](const CMatrix &a, const CMatrix &b) { return mat_mul(a, b); }, weight,
        closure_tol);
}

StructureConstants from_matrix_basis(std::span<const CMatrix> basis, const MatrixProduct &product,
                                     double weight, double closure_tol) {
    const std::size_t n = basis.size();
    if (n == 0)
        throw ShapeError("from_matrix_basis: empty basis");
    for (const auto &b : basis) {
        if (!b.is_square())
            throw ShapeError("from_matrix_basis: basis matrix " + b.shape_string() +
                             " is not square");
        require_same_shape(basis[0], b, "from_matrix_basis");
    }

    CMatrix gram(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            gram(a, b) = weight * frobenius_inner(basis[a], basis[b]);

    StructureConstants c(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const CMatrix prod = product(basis[j], basis[k]);
            std::vector<Complex> rhs(n);
            for (std::size_t a = 0; a < n; ++a)
                rhs[a] = weight * frobenius_inner(basis[a], prod);
            const GramSolve sol = solve_gram(gram, rhs);
            if (sol.rank < n)
                throw RankError("from_matrix_basis: basis is linearly dependent (Gram rank " +
                                    std::to_string(sol.rank) + " of " + std::to_string(n) + ")",
                                sol.rank, n);
            CMatrix rebuilt(prod.rows(), prod.cols());
            for (std::size_t l = 0; l < n; ++l) {
                c(j, k, l) = sol.x[l];
                rebuilt.add_scaled(sol.x[l], basis[l]);
            }
            const double miss = frobenius_norm(rebuilt - prod);
            if (miss > closure_tol * std::max(1.0, frobenius_norm(prod)))
                throw ContractError("from_matrix_basis: product of basis elements " +
                                    std::to_string(j) + "," + std::to_string(k) +
                                    " leaves the span (residual " + std::to_string(miss) + ")");
        }
    return c;
}

std::array<CMatrix, 4> pauli_matrices() {
    using namespace std::complex_literals;
    return {CMatrix::from_rows({{1, 0}, {0, 1}}), CMatrix::from_rows({{0, 1}, {1, 0}}),
            CMatrix::from_rows({{0, -1i}, {1i, 0}}), CMatrix::from_rows({{1, 0}, {0, -1}})};
}

int levi_civita(std::size_t j, std::size_t k, std::size_t m) noexcept {
    if (j == 0 || k == 0 || m == 0 || j > 3 || k > 3 || m > 3)
        return 0;
    if (j == k || k == m || j == m)
        return 0;
    // even permutations of (1,2,3)
    if ((j == 1 && k == 2) || (j == 2 && k == 3) || (j == 3 && k == 1))
        return 1;
    return -1;
}

StructureConstants exotic_structure_constants() {
    StructureConstants c(4);
    c(0, 0, 0) = 1.0;
    c(0, 1, 1) = 1.0;
    c(1, 3, 1) = 1.0;
    c(2, 0, 2) = 1.0;
    c(3, 2, 2) = 1.0;
    c(3, 3, 3) = 1.0;
    return c;
}

StructureConstants kappa_structure_constants(const std::array<double, 4> &s) {
    using namespace std::complex_literals;
    auto delta = [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; };
    StructureConstants c(4);

    for (std::size_t a = 0; a < 4; ++a)
        c(0, 0, a) = s[a];

    // C_0j^a = d_0^a s^j + d_j^a s^0 + [a spatial] i sum_n s^n eps_{n j a};  C_j0 = conj(C_0j)
    for (std::size_t j = 1; j <= 3; ++j)
        for (std::size_t a = 0; a < 4; ++a) {
            Complex v = delta(a, 0) * s[j] + delta(a, j) * s[0];
            for (std::size_t n = 1; n <= 3; ++n)
                v += 1i * s[n] * double(levi_civita(n, j, a));
            c(0, j, a) = v;
            c(j, 0, a) = std::conj(v);
        }

    // C_jm^a = d_0^a (s^0 d_jm + i sum_n s^n eps_{n m j}) + d_j^a s^m + d_m^a s^j
    //          + [a spatial] (i s^0 eps_{j m a} - d_jm s^a)
    for (std::size_t j = 1; j <= 3; ++j)
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t a = 0; a < 4; ++a) {
                Complex v{};
                if (a == 0) {
                    v = s[0] * delta(j, m);
                    for (std::size_t n = 1; n <= 3; ++n)
                        v += 1i * s[n] * double(levi_civita(n, m, j));
                } else {
                    v = delta(j, a) * s[m] + delta(m, a) * s[j] +
                        1i * s[0] * double(levi_civita(j, m, a)) - delta(j, m) * s[a];
                }
                c(j, m, a) = v;
            }
    return c;
}

} // namespace starkernel
