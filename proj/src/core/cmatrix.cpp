#include "starkernel/cmatrix.hpp"
#include "starkernel/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace starkernel {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0)
        throw ShapeError("matrix dimensions must be at least 1x1, got " + shape_string());
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0)
        throw ShapeError("matrix dimensions must be at least 1x1, got " + shape_string());
    if (data_.size() != rows * cols)
        throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                         shape_string());
    require_finite(*this, "matrix entries");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> data;
    data.reserve(r * c);
    for (const auto &row : rows) {
        if (row.size() != c)
            throw ShapeError("ragged matrix literal");
        data.insert(data.end(), row.begin(), row.end());
    }
    return CMatrix(r, c, std::move(data));
}

std::string CMatrix::shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

CMatrix &CMatrix::operator+=(const CMatrix &other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

CMatrix &CMatrix::operator*=(Complex s) noexcept {
    for (auto &x : data_)
        x *= s;
    return *this;
}

CMatrix &CMatrix::add_scaled(Complex alpha, const CMatrix &other) {
    require_same_shape(*this, other, "scaled addition");
    kernels::active().axpy(data_.size(), alpha, other.data_.data(), data_.data());
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(const CMatrix &a, const CMatrix &b) { return mat_mul(a, b); }

CMatrix mat_mul(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows())
        throw ShapeError("mat_mul: cannot multiply " + a.shape_string() + " by " +
                         b.shape_string());
    CMatrix c(a.rows(), b.cols());
    kernels::active().gemm(a.entries().data(), b.entries().data(), c.entries().data(),
                           a.rows(), a.cols(), b.cols());
    return c;
}

Complex mat_trace(const CMatrix &a) {
    if (!a.is_square())
        throw ShapeError("mat_trace: matrix is not square (" + a.shape_string() + ")");
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i)
        t += a(i, i);
    return t;
}

CMatrix mat_adjoint(const CMatrix &a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = std::conj(a(i, j));
    return out;
}

CMatrix mat_transpose(const CMatrix &a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

Complex trace_product(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw ShapeError("trace_product: " + a.shape_string() + " and " + b.shape_string() +
                         " do not form a square product");
    // Only square operands reach the paired summation; rectangular ones fall
    // back to a plain sum (no symmetry claim is made for them).
    if (!a.is_square()) {
        Complex t{};
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                t += a(i, j) * b(j, i);
        return t;
    }
    const std::size_t n = a.rows();
    Complex t{};
    for (std::size_t i = 0; i < n; ++i) {
        t += a(i, i) * b(i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            t += a(i, j) * b(j, i) + a(j, i) * b(i, j);
    }
    return t;
}

Complex frobenius_inner(const CMatrix &a, const CMatrix &b) {
    require_same_shape(a, b, "frobenius_inner");
    return kernels::active().dotc(a.size(), a.entries().data(), b.entries().data());
}

double frobenius_norm(const CMatrix &a) {
    return std::sqrt(kernels::active().sumsq(a.size(), a.entries().data()));
}

double max_abs(const CMatrix &a) {
    double m = 0.0;
    for (const auto &x : a.entries())
        m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

CMatrix leading_block(const CMatrix &a, std::size_t k) {
    if (k == 0 || k > a.rows() || k > a.cols())
        throw ShapeError("leading_block: cannot take " + std::to_string(k) + " levels of " +
                         a.shape_string());
    CMatrix out(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            out(i, j) = a(i, j);
    return out;
}

void require_finite(const CMatrix &a, const char *what) {
    for (const auto &x : a.entries())
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw ContractError(std::string(what) + ": non-finite entry");
}

void require_same_shape(const CMatrix &a, const CMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(std::string(what) + ": shape mismatch " + a.shape_string() + " vs " +
                         b.shape_string());
}

} // namespace starkernel
