// Copyright 2026 The Clockgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace clockgap {

/// Run f(i) for every i in [0, n) on a small worker pool.  threads = 0 means
/// machine parallelism; 1 runs inline.  Work items must be independent;
/// callers keep results deterministic by writing to slot i only.  The first
/// exception thrown by any worker is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& f) {
  if (threads < 0) throw std::invalid_argument("parallel_for: negative thread count");
  std::size_t want = threads == 0
                         ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                         : static_cast<std::size_t>(threads);
  want = std::min(want, n);
  if (want <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(want);
  for (std::size_t w = 0; w < want; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace clockgap
