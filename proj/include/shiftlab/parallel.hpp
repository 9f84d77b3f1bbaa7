#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "shiftlab/window.hpp"

namespace shiftlab {

/// Worker cap: SHIFTLAB_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls f(i) for i in [begin, end) split into contiguous chunks, one per
/// worker. f must only write to per-index state; the first exception thrown
/// by any worker is rethrown on the caller's thread.
template <class F>
void parallel_for(Index begin, Index end, F&& f) {
  const Index n = end - begin;
  if (n <= 0) return;
  const auto workers = static_cast<Index>(std::min<Index>(worker_count(), n));
  if (workers <= 1) {
    for (Index i = begin; i < end; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (Index w = 0; w < workers; ++w) {
    const Index lo = begin + n * w / workers;
    const Index hi = begin + n * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (Index i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace shiftlab
