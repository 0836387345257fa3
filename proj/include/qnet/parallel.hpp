#pragma once

#include <cstddef>
#include <functional>

namespace qnet {

// Runs fn(0..count-1) on up to `workers` threads. Tasks must write results
// into their own pre-sized slots; callers reduce in index order afterwards,
// which keeps every aggregate bit-identical for any worker count.
// workers <= 1 runs inline.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

} // namespace qnet
