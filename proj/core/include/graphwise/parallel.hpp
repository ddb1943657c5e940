#pragma once

#include <cstddef>
#include <functional>

namespace graphwise {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Tasks must write
// only to their own output slots; the work items carry their own derived
// seeds, so the computed values are identical for any thread count.
// The first exception thrown by a task is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace graphwise
