#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace gue {

/// Worker count: hardware concurrency, capped by GUE_SPECTRA_THREADS when set.
unsigned thread_count();

/// Runs body(i) for i in [0, count) across thread_count() workers. Results must
/// be written to per-index slots; scheduling order is unspecified.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Counter-based seed for replicate `index` of a run with master seed `master`
/// (splitmix64 finalizer over both words), independent of execution order.
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index);

}  // namespace gue
