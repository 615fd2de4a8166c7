#pragma once
// Data-parallel helper for embarrassingly parallel index loops (disjoint
// writes only, so results are bit-identical at any thread count). The worker
// count is capped by the SWLW_THREADS environment variable; default 1.

#include <cstddef>
#include <functional>

namespace swlw {

int max_threads();

// invokes fn(begin, end) over a partition of [0, count)
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace swlw
