#pragma once

#include <cstddef>
#include <functional>

namespace schwarzlift {

/// Upper bound on worker threads. Initialized from SCHWARZLIFT_THREADS when
/// set, otherwise from the hardware concurrency.
int thread_cap();
void set_thread_cap(int n);

/// Runs body(i) for i in [0, n) on up to thread_cap() threads. Each index is
/// executed exactly once; results must be written to per-index slots. If any
/// call throws, the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace schwarzlift
