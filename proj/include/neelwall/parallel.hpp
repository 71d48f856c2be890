// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Runs independent jobs 0..n-1 on a small thread pool. Each job writes only
// its own slot, so results come out in index order whatever the schedule.

#ifndef NEELWALL_PARALLEL_HPP
#define NEELWALL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace neelwall {

// threads == 0: hardware concurrency. The first exception stops the
// scheduling of new jobs and is rethrown after all workers joined; ok[i]
// tells which jobs finished.
inline std::vector<bool> parallel_for(std::size_t n, unsigned threads,
                                      const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<char> done(n, 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        job(i);
        done[i] = 1;
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return {done.begin(), done.end()};
}

}  // namespace neelwall

#endif
