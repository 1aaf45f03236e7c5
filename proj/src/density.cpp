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

#include "pa/density.hpp"

#include <algorithm>

#include "pa/error.hpp"

namespace pa {

void check_windows(const std::vector<std::int64_t>& windows) {
  if (windows.empty()) throw DomainError("no windows given");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 0) throw DomainError("windows must be nonnegative");
    if (i > 0 && windows[i] <= windows[i - 1])
      throw DomainError("windows must be strictly increasing");
  }
}

DensityEstimate make_estimate(std::vector<std::int64_t> windows, std::vector<std::int64_t> counts,
                              bool possibly_incomplete) {
  DensityEstimate e;
  e.windows = std::move(windows);
  e.counts = std::move(counts);
  e.possibly_incomplete = possibly_incomplete;
  for (std::size_t i = 0; i < e.windows.size(); ++i)
    e.ratios.emplace_back(BigInt(e.counts[i]), BigInt(2) * e.windows[i] + 1);
  if (!e.ratios.empty()) {
    std::size_t start = e.ratios.size() / 2;
    e.upper = *std::max_element(e.ratios.begin() + static_cast<std::ptrdiff_t>(start), e.ratios.end());
    e.lower = *std::min_element(e.ratios.begin() + static_cast<std::ptrdiff_t>(start), e.ratios.end());
  }
  return e;
}

}  // namespace pa
