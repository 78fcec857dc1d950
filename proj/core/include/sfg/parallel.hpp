#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sfg {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on a worker pool. Callers make index i own
// output slot i, so results are identical for every thread count and the
// aggregation stays a deterministic fold over index order.
template <typename F>
void parallel_for_index(std::int64_t count, int threads, F&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::int64_t chunk =
      std::max<std::int64_t>(1, count / (static_cast<std::int64_t>(threads) * 16));
  auto worker = [&]() {
    for (;;) {
      const std::int64_t begin = cursor.fetch_add(chunk);
      if (begin >= count) return;
      const std::int64_t end = std::min(count, begin + chunk);
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sfg
