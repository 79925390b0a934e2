#pragma once

#include <cstddef>
#include <functional>

namespace cauchydos {

/// Worker count: CAUCHYDOS_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Indices are handed out dynamically, so results must be written to
/// per-index slots. The exception of the lowest failing index is rethrown
/// after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace cauchydos
