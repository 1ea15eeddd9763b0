/*
 * Copyright 2026 The restricted-range Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rr {

// Worker count: RR_THREADS if set (>= 1), else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("RR_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {
inline thread_local bool in_parallel_region = false;
}

// Calls body(i) for i in [0, n). Each index writes only to its own output
// slot, so results never depend on the number of workers. Nested calls run
// serially. The first exception (lowest index) is rethrown.
template <class Body>
void parallel_for(int n, Body&& body) {
  if (n <= 0) return;
  const int workers = std::min(thread_count(), n);
  if (workers <= 1 || detail::in_parallel_region) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  int err_index = n;
  std::exception_ptr err;
  auto run = [&]() {
    detail::in_parallel_region = true;
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
    detail::in_parallel_region = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Maps [0, n) through f into a vector, in index order.
template <class T, class F>
std::vector<T> parallel_map(int n, F&& f) {
  std::vector<T> out(static_cast<size_t>(std::max(n, 0)));
  parallel_for(n, [&](int i) { out[static_cast<size_t>(i)] = f(i); });
  return out;
}

}  // namespace rr
