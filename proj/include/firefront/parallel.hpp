#pragma once

#include <cstddef>
#include <functional>

namespace firefront {

/// Worker count: FIREFRONT_THREADS when set (>= 1), else the hardware count.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// runs exactly once; the caller must make bodies independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace firefront
