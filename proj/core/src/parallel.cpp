// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/parallel.hpp"

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace uqcal {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (n_threads == 1) {
    fn(0, count);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run_chunk = [&](std::size_t begin, std::size_t end) {
    try {
      fn(begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const std::size_t chunk = (count + n_threads - 1) / n_threads;
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  std::size_t begin = 0;
  for (unsigned t = 0; t + 1 < n_threads && begin + chunk < count; ++t) {
    pool.emplace_back(run_chunk, begin, begin + chunk);
    begin += chunk;
  }
  run_chunk(begin, count);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace uqcal
