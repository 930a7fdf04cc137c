#pragma once
// Static round-robin parallel loop; the first exception thrown by any worker is rethrown.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hlc {

// threads <= 0 means one per hardware thread.
inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

template <class Fn>
void parallel_for(uint64_t count, int threads, Fn&& fn) {
  const uint64_t nt = std::min<uint64_t>(static_cast<uint64_t>(resolve_threads(threads)), std::max<uint64_t>(count, 1));
  if (nt <= 1) {
    for (uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (uint64_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (uint64_t i = t; i < count; i += nt) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hlc
