#pragma once

#include <cstddef>
#include <functional>

namespace benford {

/// Worker count: BENFORD_KIT_THREADS when set to an integer in [1, 256],
/// otherwise hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Results must
/// be written to per-index slots; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace benford
