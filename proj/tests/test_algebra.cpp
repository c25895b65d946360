#include "starkernel/algebra.hpp"
#include "starkernel/catalog.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace starkernel;
using namespace std::complex_literals;

namespace {

std::vector<CMatrix> weyl_basis() {
    return {support::unit(2, 0, 0), support::unit(2, 0, 1), support::unit(2, 1, 0),
            support::unit(2, 1, 1)};
}

TEST(StructureConstants, ShapeAndFiniteness) {
    EXPECT_THROW(StructureConstants(0), ShapeError);
    EXPECT_THROW(StructureConstants(2, std::vector<Complex>(7)), ShapeError);
    EXPECT_THROW(StructureConstants(1, {Complex(INFINITY, 0)}), ContractError);
}

TEST(StructureConstants, MultiplyAndOpposite) {
    StructureConstants c(2);
    c(0, 1, 1) = 2.0; // e0 e1 = 2 e1
    c(1, 0, 0) = 1i;  // e1 e0 = i e0
    const std::vector<Complex> f{1.0, 0.0}, g{0.0, 1.0};
    EXPECT_EQ(c.multiply(f, g), (std::vector<Complex>{0.0, 2.0}));
    EXPECT_EQ(c.multiply(g, f), (std::vector<Complex>{1i, 0.0}));
    const StructureConstants op = c.opposite();
    EXPECT_EQ(op(1, 0, 1), Complex(2.0));
    EXPECT_EQ(op.opposite(), c);
    EXPECT_THROW((void)c.multiply(f, std::vector<Complex>{1.0}), ShapeError);
}

TEST(Associativity, MatrixAlgebrasAreAssociative) {
    EXPECT_TRUE(check_associativity(exotic_structure_constants()).passed);
    EXPECT_EQ(check_associativity(exotic_structure_constants()).max_residual, 0.0);
    const auto sigma = pauli_matrices();
    const StructureConstants pauli = from_matrix_basis(sigma);
    EXPECT_LE(check_associativity(pauli).max_residual, 1e-14);
}

TEST(Associativity, ReportsTheWorstQuadruple) {
    // e0 e0 = e1, e0 e1 = e0, everything else 0:
    // (e0 e0) e0 = e1 e0 = 0 but e0 (e0 e0) = e0 e1 = e0.
    StructureConstants c(2);
    c(0, 0, 1) = 1.0;
    c(0, 1, 0) = 1.0;
    const AssociativityReport r = check_associativity(c);
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.max_residual, 1.0);
    const auto [j, k, m, s] = r.worst_indices;
    Complex lhs{}, rhs{};
    for (std::size_t t = 0; t < 2; ++t) {
        lhs += c(j, k, t) * c(t, m, s);
        rhs += c(j, t, s) * c(k, m, t);
    }
    EXPECT_EQ(std::abs(lhs - rhs), 1.0);
}

TEST(FromMatrixBasis, ExoticProductOnWeylBasisGivesTheSixConstants) {
    const StructureConstants c = from_matrix_basis(weyl_basis(), exotic_product);
    EXPECT_EQ(c, exotic_structure_constants());
    std::size_t nonzero = 0;
    for (const auto &x : c.dense())
        nonzero += x != Complex{};
    EXPECT_EQ(nonzero, 6u);
}

TEST(FromMatrixBasis, PauliHalfBasisGivesHalfTraceConstants) {
    // (sigma_j/2)(sigma_k/2) = sum_l Tr[sigma_j sigma_k sigma_l]/4 (sigma_l/2)
    const auto sigma = pauli_matrices();
    std::vector<CMatrix> half;
    for (const auto &s : sigma)
        half.push_back(0.5 * s);
    const StructureConstants c = from_matrix_basis(half, 2.0);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t l = 0; l < 4; ++l) {
                const Complex expected = mat_trace(sigma[j] * sigma[k] * sigma[l]) / 4.0;
                EXPECT_LE(std::abs(c(j, k, l) - expected), 1e-15);
            }
    // sigma_1 sigma_2 = i sigma_3 in the half basis: C_12^3 = i/2
    EXPECT_EQ(c(1, 2, 3), Complex(0.0, 0.5));
}

TEST(FromMatrixBasis, DependentBasisAndOpenSpanAreErrors) {
    const CMatrix e = support::unit(2, 0, 0);
    const std::vector<CMatrix> dependent{e, 3.0 * e};
    EXPECT_THROW((void)from_matrix_basis(dependent), RankError);
    const std::vector<CMatrix> open{support::unit(2, 0, 1), support::unit(2, 1, 0)};
    EXPECT_THROW((void)from_matrix_basis(open), ContractError);
}

TEST(LeviCivita, SignsAndZeros) {
    EXPECT_EQ(levi_civita(1, 2, 3), 1);
    EXPECT_EQ(levi_civita(2, 3, 1), 1);
    EXPECT_EQ(levi_civita(2, 1, 3), -1);
    EXPECT_EQ(levi_civita(1, 1, 3), 0);
    EXPECT_EQ(levi_civita(0, 1, 2), 0);
}

TEST(Kappa, ClosedFormMatchesBruteForceExpansion) {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    const auto sigma = pauli_matrices();
    for (int trial = 0; trial < 10; ++trial) {
        const std::array<double, 4> s{g(rng), g(rng), g(rng), g(rng)};
        CMatrix kappa(2, 2);
        for (std::size_t a = 0; a < 4; ++a)
            kappa.add_scaled(s[a], sigma[a]);
        const StructureConstants brute = from_matrix_basis(
            std::span<const CMatrix>(sigma),
            [&](const CMatrix &x, const CMatrix &y) { return x * kappa * y; });
        EXPECT_LE(max_abs_diff(kappa_structure_constants(s), brute), 1e-13);
    }
}

TEST(Kappa, IdentityKappaIsTheOrdinaryProduct) {
    // s = (1,0,0,0): sigma_1 sigma_2 = i sigma_3 and sigma_j^2 = sigma_0
    const StructureConstants c = kappa_structure_constants({1, 0, 0, 0});
    EXPECT_EQ(c(1, 2, 3), Complex(0, 1));
    EXPECT_EQ(c(2, 1, 3), Complex(0, -1));
    EXPECT_EQ(c(3, 3, 0), Complex(1));
    EXPECT_EQ(c(0, 2, 2), Complex(1));
    EXPECT_TRUE(check_associativity(c).passed);
}

} // namespace
