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

#ifndef PA_PARALLEL_HPP
#define PA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace pa {

/// Worker count: PA_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// `body(begin, end, chunk_index)` on each. Chunks are numbered in order, so
/// callers can merge per-chunk results deterministically. The first
/// exception thrown by a worker is rethrown.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                     std::size_t max_chunks = 0);

/// Number of chunks parallel_chunks will use for n items.
std::size_t chunk_count(std::size_t n, std::size_t max_chunks = 0);

}  // namespace pa

#endif  // PA_PARALLEL_HPP
