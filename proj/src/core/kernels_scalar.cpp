#include "starkernel/kernels.hpp"

#include <algorithm>

namespace starkernel::kernels {

namespace {

// Explicit real arithmetic: std::complex multiplication routes through the
// NaN-recovering __muldc3 path, which is both slow and not what the SIMD
// variants compute.

void gemm_scalar(const cplx *a, const cplx *b, cplx *c, std::size_t m, std::size_t k,
                 std::size_t n) noexcept {
    std::fill(c, c + m * n, cplx{});
    for (std::size_t i = 0; i < m; ++i) {
        cplx *crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real(), ai = a[i * k + p].imag();
            const cplx *brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real(), bi = brow[j].imag();
                crow[j] = {crow[j].real() + (ar * br - ai * bi),
                           crow[j].imag() + (ar * bi + ai * br)};
            }
        }
    }
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx *x, cplx *y) noexcept {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

cplx dotu_scalar(std::size_t n, const cplx *x, const cplx *y) noexcept {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

cplx dotc_scalar(std::size_t n, const cplx *x, const cplx *y) noexcept {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

double sumsq_scalar(std::size_t n, const cplx *x) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

constexpr KernelTable kScalar{"scalar", gemm_scalar, axpy_scalar, dotu_scalar, dotc_scalar,
                              sumsq_scalar};

} // namespace

const KernelTable &scalar_table() noexcept { return kScalar; }

} // namespace starkernel::kernels
