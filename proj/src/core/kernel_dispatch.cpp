#include "starkernel/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace starkernel::kernels {

#ifndef STARKERNEL_HAVE_AVX2
const KernelTable *avx2_table() noexcept { return nullptr; }
#endif

bool cpu_has_avx2_fma() noexcept {
#if defined(STARKERNEL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::vector<const KernelTable *> available_tables() {
    std::vector<const KernelTable *> out{&scalar_table()};
    if (avx2_table() != nullptr && cpu_has_avx2_fma())
        out.push_back(avx2_table());
    return out;
}

namespace {

const KernelTable *choose() noexcept {
    if (const char *env = std::getenv("STARKERNEL_SIMD"); env != nullptr) {
        if (std::string_view(env) == "scalar")
            return &scalar_table();
    }
    if (avx2_table() != nullptr && cpu_has_avx2_fma())
        return avx2_table();
    return &scalar_table();
}

std::atomic<const KernelTable *> g_override{nullptr};

} // namespace

const KernelTable &active() noexcept {
    if (const KernelTable *t = g_override.load(std::memory_order_acquire))
        return *t;
    static const KernelTable *const chosen = choose();
    return *chosen;
}

void set_active_for_testing(const KernelTable *table) noexcept {
    g_override.store(table, std::memory_order_release);
}

} // namespace starkernel::kernels
