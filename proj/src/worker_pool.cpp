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

#include "dmps/worker_pool.hpp"

#include <string>

#include "dmps/errors.hpp"

namespace dmps {

WorkerPool::WorkerPool(std::size_t n_workers) {
  if (n_workers < 1) throw InvalidInput("worker pool needs at least one worker");
  threads_.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) threads_.emplace_back([this] { loop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  work_ready_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::loop() {
  for (;;) {
    std::function<void()> job;
    {
      std::unique_lock lock(mutex_);
      work_ready_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      job = std::move(queue_.front());
      queue_.pop();
    }
    job();
    {
      std::lock_guard lock(mutex_);
      --pending_;
    }
    work_done_.notify_all();
  }
}

void WorkerPool::run(std::size_t count, const std::function<void(std::size_t)>& task) {
  {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < count; ++i) queue_.push([&task, i] { task(i); });
    pending_ += count;
  }
  work_ready_.notify_all();
  std::unique_lock lock(mutex_);
  work_done_.wait(lock, [this] { return pending_ == 0; });
}

void WorkerPool::raise_if_failed(const std::vector<std::exception_ptr>& errors, std::string_view label) {
  std::string message;
  std::exception_ptr first;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    if (!first) first = errors[i];
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    if (!message.empty()) message += "; ";
    message += std::string(label) + " " + std::to_string(i) + ": " + what;
  }
  if (!first) return;
  try {
    std::rethrow_exception(first);
  } catch (const InvalidInput&) {
    throw InvalidInput(message);
  } catch (const NumericalError&) {
    throw NumericalError(message);
  } catch (...) {
    throw Error(message);
  }
}

}  // namespace dmps
