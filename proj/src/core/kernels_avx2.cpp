// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may run before cpu_has_avx2_fma() says so.

#include "starkernel/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace starkernel::kernels {

namespace {

// One __m256d holds two complex doubles: [r0 i0 r1 i1].

inline __m256d cmul_bcast(__m256d are, __m256d aim, __m256d b) noexcept {
    const __m256d bswap = _mm256_permute_pd(b, 0b0101); // [i0 r0 i1 r1]
    return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap));
}

inline cplx hsum(__m256d v) noexcept {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

void gemm_avx2(const cplx *a, const cplx *b, cplx *c, std::size_t m, std::size_t k,
               std::size_t n) noexcept {
    std::fill(c, c + m * n, cplx{});
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        double *crow = reinterpret_cast<double *>(c + i * n);
        for (std::size_t p = 0; p < k; ++p) {
            const cplx av = a[i * k + p];
            const double ar = av.real(), ai = av.imag();
            const __m256d are = _mm256_set1_pd(ar);
            const __m256d aim = _mm256_set1_pd(ai);
            const double *brow = reinterpret_cast<const double *>(b + p * n);
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
                const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(cv, cmul_bcast(are, aim, bv)));
            }
            if (j < n) {
                const double br = brow[2 * j], bi = brow[2 * j + 1];
                crow[2 * j] += ar * br - ai * bi;
                crow[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx *x, cplx *y) noexcept {
    const __m256d are = _mm256_set1_pd(alpha.real());
    const __m256d aim = _mm256_set1_pd(alpha.imag());
    const double *xd = reinterpret_cast<const double *>(x);
    double *yd = reinterpret_cast<double *>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_bcast(are, aim, xv)));
    }
    if (i < n) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
    }
}

// For the dot products the accumulators hold x_r*y (in re_acc) and x_i*y
// (in im_acc) lane-wise; the complex combination happens once at the end.

cplx dotu_avx2(std::size_t n, const cplx *x, const cplx *y) noexcept {
    const double *xd = reinterpret_cast<const double *>(x);
    const double *yd = reinterpret_cast<const double *>(y);
    __m256d acc_r = _mm256_setzero_pd(); // [xr*yr, xr*yi, ...]
    __m256d acc_i = _mm256_setzero_pd(); // [xi*yr, xi*yi, ...]
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        const __m256d xr = _mm256_movedup_pd(xv);          // [xr0 xr0 xr1 xr1]
        const __m256d xi = _mm256_permute_pd(xv, 0b1111);  // [xi0 xi0 xi1 xi1]
        acc_r = _mm256_fmadd_pd(xr, yv, acc_r);
        acc_i = _mm256_fmadd_pd(xi, yv, acc_i);
    }
    const cplx r = hsum(acc_r); // (sum xr*yr, sum xr*yi)
    const cplx s = hsum(acc_i); // (sum xi*yr, sum xi*yi)
    double re = r.real() - s.imag();
    double im = r.imag() + s.real();
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx dotc_avx2(std::size_t n, const cplx *x, const cplx *y) noexcept {
    const double *xd = reinterpret_cast<const double *>(x);
    const double *yd = reinterpret_cast<const double *>(y);
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        const __m256d xr = _mm256_movedup_pd(xv);
        const __m256d xi = _mm256_permute_pd(xv, 0b1111);
        acc_r = _mm256_fmadd_pd(xr, yv, acc_r);
        acc_i = _mm256_fmadd_pd(xi, yv, acc_i);
    }
    const cplx r = hsum(acc_r);
    const cplx s = hsum(acc_i);
    double re = r.real() + s.imag();
    double im = r.imag() - s.real();
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double sumsq_avx2(std::size_t n, const cplx *x) noexcept {
    const double *xd = reinterpret_cast<const double *>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    const cplx h = hsum(acc);
    double s = h.real() + h.imag();
    for (; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

constexpr KernelTable kAvx2{"avx2", gemm_avx2, axpy_avx2, dotu_avx2, dotc_avx2, sumsq_avx2};

} // namespace

const KernelTable *avx2_table() noexcept { return &kAvx2; }

} // namespace starkernel::kernels
