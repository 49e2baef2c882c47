#pragma once

#include <cstddef>
#include <functional>

namespace diurnal {

/// Number of worker threads honoring DIURNAL_TDA_THREADS (0 or unset = all
/// hardware threads).
unsigned worker_count();

/// Runs fn(i) for i in [0, n) across worker threads. Results must be written
/// to per-index slots; the partition is deterministic.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace diurnal
