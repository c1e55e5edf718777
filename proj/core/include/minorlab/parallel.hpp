#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace minorlab {

// Static block split over hardware threads; f(begin, end) per block.
inline void parallel_for_blocks(std::size_t count,
                                const std::function<void(std::size_t, std::size_t)>& f,
                                unsigned max_threads = 0) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (max_threads > 0 && max_threads < n) n = max_threads;
  if (n <= 1 || count < 2 * n) {
    f(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (count + n - 1) / n;
  for (unsigned t = 0; t < n; ++t) {
    const std::size_t lo = t * block;
    const std::size_t hi = std::min(count, lo + block);
    if (lo >= hi) break;
    pool.emplace_back(f, lo, hi);
  }
  for (auto& th : pool) th.join();
}

} // namespace minorlab
