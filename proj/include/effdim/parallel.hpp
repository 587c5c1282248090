#pragma once

#include <cstddef>
#include <functional>

namespace effdim {

/// Worker count used by data-parallel loops. Defaults to EFFDIM_THREADS or 1.
std::size_t thread_count();
void set_thread_count(std::size_t count);

/// Runs body(i) for i in [0, count) on up to thread_count() threads with a
/// static interleaved partition. Callers write results into per-index slots,
/// so reductions stay independent of the thread count. The first exception
/// thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace effdim
