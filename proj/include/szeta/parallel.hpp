#pragma once

#include <cstddef>
#include <functional>

namespace szeta {

// Worker count from SZETA_THREADS, falling back to 1.
int default_threads();

// Calls body(i) for every i in [0, count) using up to `threads` workers.
// Indices are claimed in blocks; results must be written to per-index slots
// so output order never depends on scheduling. The first exception thrown by
// any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace szeta
