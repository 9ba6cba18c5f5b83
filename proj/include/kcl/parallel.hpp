#pragma once

#include <cstddef>
#include <functional>

namespace kcl {

// Worker count: KCL_THREADS when set (>= 1), else hardware concurrency.
unsigned thread_budget();

// Runs body(i) for i in [0, n). Exceptions from workers are rethrown on the
// caller's thread (first one wins). Each index runs exactly once.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kcl
