#pragma once

#include <cstddef>
#include <functional>

namespace planes4 {

// Worker count: hardware concurrency capped by the PLANES4_THREADS
// environment variable (a positive integer). Always >= 1.
unsigned worker_count();

// Runs body(i) for i in [0, n) over contiguous static chunks. Callers that
// reduce must write per-index results and combine them in index order so the
// outcome does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace planes4
