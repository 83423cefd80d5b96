#pragma once

#include <cstddef>
#include <functional>

namespace cosrays {

// Worker count: COSRAYS_THREADS if set to a positive integer, else the
// hardware concurrency (at least 1).
unsigned thread_count();

// Calls fn(i) for i in [0, n), split into contiguous chunks across threads.
// fn must only write to state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cosrays
