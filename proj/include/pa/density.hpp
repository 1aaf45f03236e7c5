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

#ifndef PA_DENSITY_HPP
#define PA_DENSITY_HPP

#include <cstdint>
#include <vector>

#include "pa/bigint.hpp"

namespace pa {

/// Windowed counts |A ∩ [-h, h]| and ratios count / (2h + 1).
struct DensityEstimate {
  std::vector<std::int64_t> windows;
  std::vector<std::int64_t> counts;
  std::vector<Rational> ratios;
  /// Largest and smallest ratio over the tail (the last half of the windows).
  Rational upper;
  Rational lower;
  /// Set when an enumeration ceiling may have hidden members.
  bool possibly_incomplete = false;
};

/// Fills ratios and the tail summary from windows and counts.
DensityEstimate make_estimate(std::vector<std::int64_t> windows, std::vector<std::int64_t> counts,
                              bool possibly_incomplete = false);

/// Throws DomainError unless windows are nonempty, nonnegative and strictly
/// increasing.
void check_windows(const std::vector<std::int64_t>& windows);

}  // namespace pa

#endif  // PA_DENSITY_HPP
