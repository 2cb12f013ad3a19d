#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace trihom::detail {

// Runs f(i) for i in [0, n) on up to `jobs` threads.  The first exception
// thrown by any task is rethrown after all threads finish.
template <class F>
void parallel_for(size_t n, int jobs, F&& f) {
  size_t workers = std::min<size_t>(n, static_cast<size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next++;
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace trihom::detail
