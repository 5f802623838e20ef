#pragma once

#include <cstddef>
#include <functional>

namespace corrdyn {

/// Worker threads used by data-parallel loops. Defaults to the CORRDYN_THREADS
/// environment variable when set, else the hardware concurrency.
int worker_count();
/// Overrides the worker count; values below 1 restore the default.
void set_worker_count(int n);

/// Calls body(begin, end) over contiguous chunks covering [0, n). Chunks are
/// disjoint, so bodies that only write their own range need no locking.
/// Runs inline when n < grain or only one worker is configured.
void parallel_for(std::size_t n, std::size_t grain, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace corrdyn
