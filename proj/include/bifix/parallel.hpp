#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace bifix {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw != 0 ? hw : 1;
}

/// Runs fn(i) for every i in [0, count) on the given number of worker
/// threads (0 = all cores), handing out blocks dynamically. Results must be
/// written to per-index slots so the output is order-independent.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn,
                  std::size_t block = 64) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count <= block) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(block);
      if (begin >= count) return;
      const std::size_t end = std::min(begin + block, count);
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace bifix
