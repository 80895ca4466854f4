#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lagr {

// Worker count: LAGR_THREADS if set and positive, otherwise the hardware
// concurrency, never less than one.
inline int thread_count() {
  if (const char* env = std::getenv("LAGR_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

// Runs fn(i) for i in [0, n). Work items must write only to their own
// pre-sized slot so the result does not depend on scheduling. The first
// exception thrown by any worker is rethrown on the calling thread.
template <class F>
void parallel_for(int n, F&& fn) {
  int workers = thread_count();
  if (n <= 1 || workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  if (workers > n) workers = n;
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::atomic_int cursor{0};
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        int i = cursor.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lagr
