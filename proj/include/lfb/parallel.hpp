#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lfb {

/// Resolves a requested worker count; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Number of workers parallel_for will actually start.
inline unsigned worker_count(std::size_t count, unsigned threads) {
  return std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
}

/// Runs body(i, worker) for i in [0, count) on up to `threads` workers, where
/// worker < worker_count(count, threads). Work items are handed out
/// dynamically; callers must write results by index so that the outcome does
/// not depend on the schedule. The first exception is rethrown.
template <typename Body>
void parallel_for_workers(std::size_t count, unsigned threads, Body&& body) {
  threads = worker_count(count, threads);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](unsigned id) {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i, id);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  parallel_for_workers(count, threads, [&](std::size_t i, unsigned) { body(i); });
}

}  // namespace lfb
