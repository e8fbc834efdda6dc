#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fkhc {

// Default worker count: FKHC_WORKERS env var, else hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("FKHC_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n): workers share nothing, the index order is
// irrelevant because every sample writes to its own slot.
inline void parallel_for(int64_t n, int workers,
                         const std::function<void(int64_t)>& fn) {
  if (workers <= 0) workers = default_workers();
  if (workers == 1 || n <= 1) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int64_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace fkhc
