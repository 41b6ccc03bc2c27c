// Copyright 2026 The dmps Authors
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

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <queue>
#include <string_view>
#include <thread>
#include <vector>

namespace dmps {

/// Fixed set of threads fed from one queue.
///
/// `map` runs `fn(0) ... fn(count - 1)` on the workers and returns the
/// results in index order, so any reduction the caller performs over them is
/// independent of the number of threads. If some calls throw, all calls are
/// still awaited and one error is raised naming every failed index; it keeps
/// the category (input or numerical) of the lowest failed index.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t n_workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return threads_.size(); }

  template <typename Fn>
  auto map(std::size_t count, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> results(count);
    std::vector<std::exception_ptr> errors(count);
    run(count, [&](std::size_t i) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    raise_if_failed(errors);
    return results;
  }

  /// Throws one error naming every index with a stored exception, as
  /// "<label> i: message; ...", in the category (input, numerical, other) of
  /// the lowest such index. Does nothing when all entries are empty.
  static void raise_if_failed(const std::vector<std::exception_ptr>& errors, std::string_view label = "task");

 private:
  void run(std::size_t count, const std::function<void(std::size_t)>& task);
  void loop();

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable work_ready_;
  std::condition_variable work_done_;
  std::queue<std::function<void()>> queue_;
  std::size_t pending_ = 0;
  bool stopping_ = false;
};

}  // namespace dmps
