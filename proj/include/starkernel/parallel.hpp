#pragma once

#include <cstddef>
#include <functional>

namespace starkernel {

/// Worker count for internal loops: hardware concurrency, capped by the
/// STARKERNEL_THREADS environment variable when it holds a positive integer.
std::size_t thread_budget();

/// Runs body(i) for i in [0, count). Each index is executed exactly once;
/// callers write results into per-index slots, so output does not depend on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

} // namespace starkernel
