#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace slope {

// Runs fn(0..n_items-1) with results landing in caller-owned slots, so the
// outcome is independent of scheduling.  Falls back to a plain loop on a
// single hardware thread.
inline void parallel_for(int n_items, const std::function<void(int)>& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || n_items < 2) {
    for (int i = 0; i < n_items; ++i) fn(i);
    return;
  }
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(n_items));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace slope
