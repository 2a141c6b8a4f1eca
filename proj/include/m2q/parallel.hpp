#pragma once

#include <cstddef>
#include <functional>

namespace m2q {

/// Worker count: M2Q_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Work is split into contiguous static chunks; body must only write to
/// per-index state so results do not depend on the worker count. The first
/// exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace m2q
