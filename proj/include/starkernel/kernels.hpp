#pragma once

// Complex-double inner loops behind CMatrix arithmetic. Each instruction set
// provides one KernelTable; the scalar table is the reference every other
// table is equivalence-tested against. All kernels accumulate in a fixed
// order, so a given table is bit-reproducible run to run.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace starkernel::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;

    /// c[m x n] = a[m x k] * b[k x n], all row-major and densely packed.
    void (*gemm)(const cplx *a, const cplx *b, cplx *c, std::size_t m, std::size_t k,
                 std::size_t n) noexcept;
    /// y += alpha * x
    void (*axpy)(std::size_t n, cplx alpha, const cplx *x, cplx *y) noexcept;
    /// sum x_i y_i
    cplx (*dotu)(std::size_t n, const cplx *x, const cplx *y) noexcept;
    /// sum conj(x_i) y_i
    cplx (*dotc)(std::size_t n, const cplx *x, const cplx *y) noexcept;
    /// sum |x_i|^2
    double (*sumsq)(std::size_t n, const cplx *x) noexcept;
};

const KernelTable &scalar_table() noexcept;
/// nullptr when the build has no AVX2 variant.
const KernelTable *avx2_table() noexcept;

/// True when the running CPU can execute avx2_table().
bool cpu_has_avx2_fma() noexcept;

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable *> available_tables();

/// The table used by CMatrix operations. Chosen once: the widest supported
/// table, unless STARKERNEL_SIMD=scalar is set in the environment.
const KernelTable &active() noexcept;

/// Test hook: force a table (nullptr restores the automatic choice).
void set_active_for_testing(const KernelTable *table) noexcept;

} // namespace starkernel::kernels
