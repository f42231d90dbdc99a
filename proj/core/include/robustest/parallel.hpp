#pragma once

#include <cstddef>
#include <functional>

namespace robustest {

/// Calls fn(i) for every i in [0, count) on up to `workers` threads
/// (0 = hardware concurrency). Indices are handed out in contiguous chunks;
/// fn must be safe to call concurrently for distinct indices. The first
/// exception thrown by fn is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

/// Resolves 0 to the hardware concurrency (at least 1).
unsigned resolve_workers(unsigned workers) noexcept;

}  // namespace robustest
