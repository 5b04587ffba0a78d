#pragma once

#include <functional>

namespace distboot {

/// Runs fn(0..count-1) on a small thread pool; threads <= 0 means
/// hardware concurrency. Any schedule yields the same result set because
/// each index owns its output slot. The first exception thrown by fn is
/// rethrown after all workers join.
void parallel_for(long count, int threads,
                  const std::function<void(long)>& fn);

}  // namespace distboot
