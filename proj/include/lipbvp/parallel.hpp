#pragma once

#include <cstddef>
#include <functional>

namespace lipbvp {

/// Worker count: LIPBVP_THREADS when set to a positive integer, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() workers. Callers write results into
/// per-index slots, so output order never depends on scheduling. The first exception thrown
/// by any body is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lipbvp
