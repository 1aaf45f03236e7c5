// Copyright (c) 2026 The pa Authors.
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

#include "pa/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pa {

std::size_t worker_count() {
  if (const char* env = std::getenv("PA_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::size_t chunk_count(std::size_t n, std::size_t max_chunks) {
  std::size_t chunks = worker_count();
  if (max_chunks != 0 && chunks > max_chunks) chunks = max_chunks;
  if (chunks > n) chunks = n;
  return chunks == 0 ? 1 : chunks;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                     std::size_t max_chunks) {
  std::size_t chunks = chunk_count(n, max_chunks);
  if (chunks == 1) {
    body(0, n, 0);
    return;
  }
  std::exception_ptr failure;
  std::mutex lock;
  std::vector<std::thread> threads;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t begin = n * c / chunks;
    std::size_t end = n * (c + 1) / chunks;
    threads.emplace_back([&, begin, end, c] {
      try {
        body(begin, end, c);
      } catch (...) {
        std::lock_guard<std::mutex> guard(lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace pa
