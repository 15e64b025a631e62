#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace harmoniq {

/// Worker count used by parallel_for. Order of precedence:
/// set_thread_count() > HARMONIQ_THREADS env var > hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n). Results must be written to disjoint slots so
/// the outcome is independent of scheduling.
void parallel_for(int64_t n, const std::function<void(int64_t)>& fn);

inline int& thread_count_storage() {
  static int count = 0;
  return count;
}

inline int thread_count() {
  int& c = thread_count_storage();
  if (c > 0) return c;
  if (const char* env = std::getenv("HARMONIQ_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

inline void set_thread_count(int n) { thread_count_storage() = n; }

inline void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
  int workers = std::min<int64_t>(thread_count(), n);
  if (workers <= 1) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next(0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int64_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace harmoniq
