#pragma once

#include <functional>
#include <span>

namespace wedgewave {

/// Runs fn(i) for i in [0,n) split into contiguous blocks across `threads`
/// workers. Each index is executed exactly once; callers must write only to
/// per-index slots so the result is identical for any worker count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// Fixed-shape pairwise tree sum. The reduction order depends only on the
/// length, never on the caller's thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace wedgewave
