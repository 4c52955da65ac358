#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace supergerbe {

// Worker bound for per-tuple loops. Results never depend on the count.
struct Exec {
  unsigned workers = 1;

  // SUPERGERBE_PARALLEL, else 1.
  static Exec from_env();
};

template <class F>
void parallel_for(const Exec& exec, std::size_t n, F&& body) {
  unsigned w = exec.workers;
  if (w <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  if (w > n) w = static_cast<unsigned>(n);
  std::atomic<std::size_t> next{0};
  std::mutex m;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        // keep the lowest index so the reported error is reproducible
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(w - 1);
  for (unsigned t = 1; t < w; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace supergerbe
