#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace spar::num {

// index-parallel map over [0, n); results land in caller-owned slots so the
// output order is deterministic regardless of the thread count
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline unsigned default_threads() {
  const unsigned h = std::thread::hardware_concurrency();
  return h > 0 ? h : 1;
}

}  // namespace spar::num
