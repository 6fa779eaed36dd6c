#pragma once

#include <cstddef>
#include <functional>

namespace ypq {

// Number of worker threads: YPQ_THREADS if set and positive, otherwise the
// hardware concurrency.
unsigned thread_count();

// Calls fn(i) for i in [0, n) across worker threads. Each index is handled
// exactly once, so writing results into slot i keeps output independent of the
// thread count. The exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ypq
