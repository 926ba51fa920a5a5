#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace hopfalgd {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is split into
// contiguous chunks so results written to preallocated slots merge in index
// order; output is identical for every thread count.
template <typename Fn>
void parallel_for(int64_t n, int threads, Fn fn) {
  if (n <= 0) return;
  if (threads < 2 || n < 2 * threads) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  int nt = threads;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  int64_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int64_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hopfalgd
