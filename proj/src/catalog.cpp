#include "starkernel/catalog.hpp"
#include "starkernel/matrix_io.hpp"

namespace starkernel {

using namespace std::complex_literals;

std::array<CMatrix, 4> printed_pauli_kernel_slices() {
    const Complex h = 0.5, ih = 0.5i;
    return {
        CMatrix::from_rows({{h, 0, 0, 0}, {0, h, 0, 0}, {0, 0, h, 0}, {0, 0, 0, h}}),
        CMatrix::from_rows({{0, h, 0, 0}, {h, 0, 0, 0}, {0, 0, 0, ih}, {0, 0, -ih, 0}}),
        CMatrix::from_rows({{0, 0, h, 0}, {0, 0, 0, -ih}, {h, 0, 0, 0}, {0, ih, 0, 0}}),
        CMatrix::from_rows({{0, 0, 0, h}, {0, 0, ih, 0}, {0, -ih, 0, 0}, {h, 0, 0, 0}}),
    };
}

std::array<CMatrix, 4> printed_exotic_quantizers() {
    return {
        CMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
        CMatrix::from_rows({{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
        CMatrix::from_rows({{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}}),
        CMatrix::from_rows({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
    };
}

std::array<CMatrix, 4> printed_exotic_dequantizers() {
    const auto d = printed_exotic_quantizers();
    return {0.5 * mat_transpose(d[0]), mat_transpose(d[1]), mat_transpose(d[2]),
            0.5 * mat_transpose(d[3])};
}

std::array<CMatrix, 4> printed_kappa_quantizers(const std::array<double, 4> &s) {
    const Complex s0 = s[0], s1 = s[1], s2 = s[2], s3 = s[3];
    const Complex i = 1i;
    return {
        CMatrix::from_rows({{s0, s1, s2, s3},
                            {s1, s0, i * s3, -i * s2},
                            {s2, -i * s3, s0, i * s1},
                            {s3, i * s2, -i * s1, s0}}),
        CMatrix::from_rows({{s1, s0, -i * s3, i * s2},
                            {s0, s1, -s2, -s3},
                            {-i * s3, s2, s1, i * s0},
                            {i * s2, s3, -i * s0, s1}}),
        CMatrix::from_rows({{s2, i * s3, s0, -i * s1},
                            {i * s3, s2, s1, -i * s0},
                            {s0, -s1, s2, -s3},
                            {-i * s1, i * s0, s3, s2}}),
        CMatrix::from_rows({{s3, -i * s2, i * s1, s0},
                            {-i * s2, s3, i * s0, s1},
                            {i * s1, -i * s0, s3, s2},
                            {s0, -s1, -s2, s3}}),
    };
}

CMatrix exotic_product(const CMatrix &x, const CMatrix &y) {
    if (x.rows() != 2 || x.cols() != 2 || y.rows() != 2 || y.cols() != 2)
        throw ShapeError("exotic_product: operands must be 2x2");
    const Complex a = x(0, 0), b = x(0, 1), c = x(1, 0), d = x(1, 1);
    const Complex a2 = y(0, 0), b2 = y(0, 1), c2 = y(1, 0), d2 = y(1, 1);
    return CMatrix::from_rows({{a * a2, a * b2 + b * d2}, {c * a2 + d * c2, d * d2}});
}

CatalogEntry pauli_scheme() {
    const auto sigma = pauli_matrices();
    std::vector<CMatrix> ds, us;
    for (const auto &m : sigma) {
        ds.push_back(0.5 * m);
        us.push_back(m);
    }
    StructureConstants c = from_matrix_basis(ds, 2.0);
    Scheme scheme("pauli", ds, us, c);
    return {"pauli", std::move(c), std::move(scheme),
            "D_j = sigma_j/2; source dequantizers sigma_j/2 under pairing 2Tr, stored as "
            "U_j = sigma_j; kernel K(j,k,m) = Tr[sigma_j sigma_k sigma_m]/4"};
}

CatalogEntry exotic_scheme() {
    const auto d = printed_exotic_quantizers();
    const auto u = printed_exotic_dequantizers();
    StructureConstants c = exotic_structure_constants();
    Scheme scheme("exotic", {d.begin(), d.end()}, {u.begin(), u.end()}, c);
    return {"exotic", std::move(c), std::move(scheme),
            "Weyl basis e_1..e_4 -> labels 0..3; six unit constants; U_{1,4} = D^T/2, "
            "U_{2,3} = D^T; dual constants d_jk^l = C_kj^l / 2"};
}

CatalogEntry kappa_scheme(const std::array<double, 4> &s) {
    StructureConstants c = kappa_structure_constants(s);
    std::vector<CMatrix> ds = regular_representation(c);
    std::vector<CMatrix> us;
    try {
        us = solve_dequantizers(ds);
    } catch (const RankError &e) {
        throw RankError(std::string(e.what()) + " for kappa s = (" + format_real(s[0]) + ", " +
                            format_real(s[1]) + ", " + format_real(s[2]) + ", " +
                            format_real(s[3]) + ")",
                        e.rank(), e.expected());
    }
    Scheme scheme("kappa", std::move(ds), std::move(us), c);
    return {"kappa", std::move(c), std::move(scheme),
            "a o b = a kappa b, kappa = sum s^a sigma_a; quantizers are the left regular "
            "representation (transposes of the printed family); min-norm dequantizers"};
}

} // namespace starkernel
