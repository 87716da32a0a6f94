#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qows {

// Splits [0, total) into `workers` contiguous ranges and runs fn(begin, end, slot)
// on each, one thread per range. Slot k always covers the k-th range, so callers
// that keep one result per slot and merge in slot order get output independent
// of scheduling. The first exception thrown by any worker is rethrown.
inline void parallel_ranges(std::uint64_t total, std::size_t workers,
                            const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, workers);
  if (workers == 1 || total < 2) {
    fn(0, total, 0);
    return;
  }
  workers = static_cast<std::size_t>(std::min<std::uint64_t>(workers, total));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t k = 0; k < workers; ++k) {
      const std::uint64_t begin = total * k / workers;
      const std::uint64_t end = total * (k + 1) / workers;
      pool.emplace_back([&, begin, end, k] {
        try {
          fn(begin, end, k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qows
