#pragma once

#include <cstddef>
#include <functional>

namespace forte {

/// Process-wide worker count. Defaults to the FORTE_THREADS environment
/// variable if set, otherwise hardware concurrency.
std::size_t worker_count();
void set_worker_count(std::size_t n);

/// Runs fn over [begin, end) split into contiguous blocks, one per worker.
/// Each index is visited exactly once and blocks are disjoint, so results
/// are independent of scheduling as long as fn writes only to its own rows.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace forte
