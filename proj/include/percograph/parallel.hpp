#pragma once

#include <cstddef>
#include <functional>

namespace percograph {

/// Worker count: PERCOGRAPH_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for every i in [0, count). Work is handed out dynamically,
/// so body must only write to slots owned by index i. The first exception
/// thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace percograph
