#pragma once

#include <cstddef>
#include <functional>

namespace fwlab {

/// Worker cap: FW_LAB_THREADS when set (>=1), hardware concurrency otherwise.
unsigned worker_count();

/// Runs body(i) for i in [0, count) across the worker pool.  Tasks must be
/// independent; results keyed by index stay deterministic regardless of
/// scheduling.  The first exception thrown by a task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fwlab
