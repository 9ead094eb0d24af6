// Copyright 2026 The coronaner Authors.
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

#ifndef CORONANER_PARALLEL_H_
#define CORONANER_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coronaner {

// Calls fn(i) for every i in [0, count) on up to `workers` threads. Work is
// handed out by an atomic counter, so fn must only write to slot i of any
// shared output. The first exception thrown by fn is rethrown after all
// threads have joined.
template <typename Fn>
void ParallelFor(size_t count, int workers, Fn &&fn) {
  size_t threads = std::clamp<size_t>(workers < 1 ? 1 : workers, 1,
                                      std::max<size_t>(count, 1));
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  for (auto &thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace coronaner

#endif  // CORONANER_PARALLEL_H_
