#pragma once

#include "starkernel/errors.hpp"

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace starkernel {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major, at least 1x1.
class CMatrix {
  public:
    /// Zero matrix.
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix diagonal(std::span<const Complex> diag);
    /// Literal construction, e.g. CMatrix::from_rows({{0, 1}, {1, 0}}).
    static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<const Complex> row(std::size_t i) const noexcept {
        return std::span<const Complex>(data_).subspan(i * cols_, cols_);
    }

    /// "RxC", used in error messages.
    std::string shape_string() const;

    CMatrix &operator+=(const CMatrix &other);
    CMatrix &operator-=(const CMatrix &other);
    CMatrix &operator*=(Complex s) noexcept;

    /// this += alpha * other, through the active SIMD kernel.
    CMatrix &add_scaled(Complex alpha, const CMatrix &other);

    bool operator==(const CMatrix &other) const = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix &b);
CMatrix operator-(CMatrix a, const CMatrix &b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);
CMatrix operator-(CMatrix a);
/// Matrix product; same as mat_mul.
CMatrix operator*(const CMatrix &a, const CMatrix &b);

/// Standard row-by-column product. Throws ShapeError on a.cols != b.rows.
CMatrix mat_mul(const CMatrix &a, const CMatrix &b);
/// Sum of the diagonal. Throws ShapeError if a is not square.
Complex mat_trace(const CMatrix &a);
/// Conjugate transpose.
CMatrix mat_adjoint(const CMatrix &a);
CMatrix mat_transpose(const CMatrix &a);

/// Tr[a b] without forming the product. The summation pairs (i,j) with (j,i)
/// so trace_product(a, b) == trace_product(b, a) bit for bit.
Complex trace_product(const CMatrix &a, const CMatrix &b);
/// Hilbert-Schmidt inner product Tr[a^dagger b].
Complex frobenius_inner(const CMatrix &a, const CMatrix &b);
double frobenius_norm(const CMatrix &a);
double max_abs(const CMatrix &a);
/// Largest |a_ij - b_ij|; throws ShapeError on mismatch.
double max_abs_diff(const CMatrix &a, const CMatrix &b);
/// Upper-left k x k block.
CMatrix leading_block(const CMatrix &a, std::size_t k);

/// Throws ContractError if any entry is NaN or infinite.
void require_finite(const CMatrix &a, const char *what);
void require_same_shape(const CMatrix &a, const CMatrix &b, const char *what);

} // namespace starkernel
