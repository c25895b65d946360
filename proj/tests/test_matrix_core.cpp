#include "starkernel/cmatrix.hpp"
#include "starkernel/linalg.hpp"
#include "starkernel/matrix_io.hpp"
#include "starkernel/parallel.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace starkernel;
using namespace std::complex_literals;

namespace {

TEST(CMatrix, RejectsEmptyShapesAndNonFiniteEntries) {
    EXPECT_THROW(CMatrix(0, 3), ShapeError);
    EXPECT_THROW(CMatrix(2, 2, std::vector<Complex>(3)), ShapeError);
    EXPECT_THROW(CMatrix::from_rows({{1, 2}, {3}}), ShapeError);
    EXPECT_THROW(CMatrix(1, 1, {Complex(std::nan(""), 0)}), ContractError);
}

TEST(CMatrix, ProductMatchesHandComputation) {
    const CMatrix a = CMatrix::from_rows({{1, 2i}, {0, -1}});
    const CMatrix b = CMatrix::from_rows({{3, 0}, {1i, 1}});
    // [3 + 2i*i, 2i; -i, -1]
    EXPECT_EQ(a * b, CMatrix::from_rows({{1, 2i}, {-1i, -1}}));
    EXPECT_THROW(mat_mul(a, CMatrix(3, 1)), ShapeError);
}

TEST(CMatrix, TraceProductIsSymmetricBitForBit) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = support::random_matrix(rng, 7, 7);
        const CMatrix b = support::random_matrix(rng, 7, 7);
        EXPECT_EQ(trace_product(a, b), trace_product(b, a));
        EXPECT_NEAR(std::abs(trace_product(a, b) - mat_trace(a * b)), 0.0, 1e-12);
    }
}

TEST(CMatrix, AdjointTransposeAndNorms) {
    const CMatrix a = CMatrix::from_rows({{1, 1i}, {2, 3.0 - 1i}});
    EXPECT_EQ(mat_adjoint(a), CMatrix::from_rows({{1, 2}, {-1i, 3.0 + 1i}}));
    EXPECT_EQ(mat_transpose(a), CMatrix::from_rows({{1, 2}, {1i, 3.0 - 1i}}));
    EXPECT_DOUBLE_EQ(frobenius_norm(a), std::sqrt(1.0 + 1.0 + 4.0 + 10.0));
    EXPECT_EQ(frobenius_inner(a, a), Complex(16.0, 0.0));
    EXPECT_EQ(leading_block(a, 1), CMatrix::from_rows({{1}}));
}

TEST(CMatrix, AddScaledMatchesElementwiseArithmetic) {
    std::mt19937_64 rng(2);
    const CMatrix a = support::random_matrix(rng, 5, 3);
    const CMatrix b = support::random_matrix(rng, 5, 3);
    CMatrix c = a;
    c.add_scaled(0.5 - 2i, b);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            EXPECT_NEAR(std::abs(c(i, j) - (a(i, j) + (0.5 - 2i) * b(i, j))), 0.0, 1e-15);
}

TEST(Expm, PlaneRotationMatchesClosedForm) {
    for (double theta : {0.0, 0.3, 1.0, 2.5, 7.0, 40.0}) {
        const CMatrix h = CMatrix::from_rows({{0, theta}, {-theta, 0}});
        const CMatrix e = expm_anti_hermitian(h);
        const CMatrix expected = CMatrix::from_rows(
            {{std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)}});
        EXPECT_LE(max_abs_diff(e, expected), 1e-13 * std::max(1.0, theta)) << theta;
    }
}

TEST(Expm, DiagonalPhasesAndUnitarity) {
    const std::vector<Complex> d{0.7i, -2.0i, 10.0i};
    const CMatrix e = expm_anti_hermitian(CMatrix::diagonal(d));
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_LE(std::abs(e(i, i) - std::exp(d[i])), 1e-13);
    std::mt19937_64 rng(3);
    const CMatrix u = support::random_unitary(rng, 12);
    EXPECT_LE(max_abs_diff(mat_adjoint(u) * u, CMatrix::identity(12)), 1e-12);
}

TEST(Expm, RejectsNonAntiHermitianInput) {
    EXPECT_THROW(expm_anti_hermitian(CMatrix::from_rows({{1, 0}, {0, 0}})), ContractError);
    EXPECT_THROW(expm_anti_hermitian(CMatrix(2, 3)), ShapeError);
}

TEST(Eigh, KnownSpectrum) {
    const HermitianEigen e = eigh(CMatrix::from_rows({{2, 1i}, {-1i, 2}}));
    ASSERT_EQ(e.values.size(), 2u);
    EXPECT_NEAR(e.values[0], 1.0, 1e-14);
    EXPECT_NEAR(e.values[1], 3.0, 1e-14);
    EXPECT_THROW(eigh(CMatrix::from_rows({{0, 1}, {0, 0}})), ContractError);
}

TEST(Eigh, ReconstructsRandomHermitianMatrices) {
    std::mt19937_64 rng(4);
    for (std::size_t n : {1u, 3u, 10u, 30u}) {
        const CMatrix a = support::random_hermitian(rng, n);
        const HermitianEigen e = eigh(a);
        std::vector<Complex> lambda(e.values.begin(), e.values.end());
        const CMatrix rebuilt = e.vectors * CMatrix::diagonal(lambda) * mat_adjoint(e.vectors);
        EXPECT_LE(max_abs_diff(rebuilt, a), 1e-12 * n);
        EXPECT_LE(max_abs_diff(mat_adjoint(e.vectors) * e.vectors, CMatrix::identity(n)),
                  1e-12 * n);
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    }
}

TEST(MinNorm, ExoticDequantizersFromDualityConstraints) {
    // Constraints are the regular-representation matrices of the exotic
    // algebra; the Gram matrix is diag(2, 1, 1, 2).
    const std::vector<CMatrix> d{
        CMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
        CMatrix::from_rows({{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
        CMatrix::from_rows({{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}}),
        CMatrix::from_rows({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})};
    const std::vector<double> scale{0.5, 1.0, 1.0, 0.5};
    for (std::size_t k = 0; k < 4; ++k) {
        std::vector<Complex> rhs(4);
        rhs[k] = 1.0;
        const CMatrix u = min_norm_solve(d, rhs);
        EXPECT_EQ(u, Complex(scale[k]) * mat_transpose(d[k])) << k;
    }
}

TEST(MinNorm, InconsistentConstraintsAreInfeasibleWithRank) {
    const CMatrix e = CMatrix::from_rows({{1, 0}, {0, 0}});
    const std::vector<CMatrix> rows{e, 2.0 * e};
    const std::vector<Complex> rhs{1.0, 0.0};
    try {
        (void)min_norm_solve(rows, rhs);
        FAIL() << "expected InfeasibleError";
    } catch (const InfeasibleError &err) {
        EXPECT_EQ(err.rank(), 1u);
        EXPECT_EQ(err.expected(), 2u);
    }
    // Consistent but dependent constraints are fine.
    const std::vector<Complex> ok{1.0, 2.0};
    EXPECT_LE(max_abs_diff(min_norm_solve(rows, ok), e), 1e-15);
}

TEST(MinNorm, SolutionIsMinimalAmongFeasible) {
    std::mt19937_64 rng(5);
    std::vector<CMatrix> rows;
    for (int i = 0; i < 3; ++i)
        rows.push_back(support::random_matrix(rng, 3, 3));
    const std::vector<Complex> rhs{1.0, -0.5i, 2.0};
    const CMatrix x = min_norm_solve(rows, rhs);
    for (std::size_t j = 0; j < 3; ++j)
        EXPECT_LE(std::abs(trace_product(rows[j], x) - rhs[j]), 1e-12);
    // Project a random z onto the null space of the constraints; adding it
    // keeps x feasible and strictly increases the norm.
    CMatrix gram(3, 3);
    std::vector<CMatrix> adj;
    for (const auto &r : rows)
        adj.push_back(mat_adjoint(r));
    const CMatrix z = support::random_matrix(rng, 3, 3);
    std::vector<Complex> b(3);
    for (std::size_t i = 0; i < 3; ++i) {
        b[i] = frobenius_inner(adj[i], z);
        for (std::size_t j = 0; j < 3; ++j)
            gram(i, j) = frobenius_inner(adj[i], adj[j]);
    }
    const GramSolve c = solve_gram(gram, b);
    ASSERT_EQ(c.rank, 3u);
    CMatrix null_part = z;
    for (std::size_t j = 0; j < 3; ++j)
        null_part.add_scaled(-c.x[j], adj[j]);
    for (std::size_t j = 0; j < 3; ++j)
        EXPECT_LE(std::abs(trace_product(rows[j], null_part)), 1e-12);
    EXPECT_GT(frobenius_norm(x + null_part), frobenius_norm(x));
    EXPECT_NEAR(std::abs(frobenius_inner(x, null_part)), 0.0, 1e-12);
}

TEST(MatrixIo, RoundTripIsBitExact) {
    std::mt19937_64 rng(6);
    const CMatrix a = support::random_matrix(rng, 3, 4, 1e-7);
    const CMatrix b = CMatrix::from_rows({{1.0 / 3.0, -0.1i}});
    std::stringstream ss;
    write_matrices(ss, {{"A", a}, {"B", b}});
    const auto back = read_matrices(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].name, "A");
    EXPECT_EQ(back[0].matrix, a);
    EXPECT_EQ(back[1].matrix, b);
}

TEST(MatrixIo, MalformedInputNamesTheLine) {
    std::stringstream ss("matrix A 1 2\n1,0 2;0\n");
    try {
        (void)read_matrices(ss);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    std::stringstream short_rows("matrix A 2 1\n1,0\n");
    EXPECT_THROW((void)read_matrices(short_rows), ParseError);
}

TEST(Parallel, EveryIndexRunsOnceAndExceptionsPropagate) {
    std::vector<std::atomic<int>> hits(97);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto &h : hits)
        EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10,
                              [](std::size_t i) {
                                  if (i == 7)
                                      throw ContractError("boom");
                              }),
                 ContractError);
    EXPECT_GE(thread_budget(), 1u);
}

} // namespace
