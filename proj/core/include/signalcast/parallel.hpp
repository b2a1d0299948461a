#pragma once

#include <cstddef>
#include <functional>

namespace signalcast {

/// Worker count: SIGNALCAST_THREADS when set and positive, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into preallocated slots so output order never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace signalcast
