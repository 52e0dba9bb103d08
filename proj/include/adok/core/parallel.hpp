#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace adok {

// Index-parallel loop with deterministic result placement: f(i) may write
// only to slot i of caller-owned storage.
inline void parallel_for(size_t n, unsigned jobs, const std::function<void(size_t)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  unsigned t = std::min<unsigned>(jobs, static_cast<unsigned>(n));
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned i = 0; i < t; ++i)
    pool.emplace_back([&] {
      for (;;) {
        size_t idx = next.fetch_add(1);
        if (idx >= n) return;
        try {
          f(idx);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline unsigned default_jobs() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

}  // namespace adok
