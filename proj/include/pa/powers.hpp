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

#ifndef PA_POWERS_HPP
#define PA_POWERS_HPP

#include <cstdint>
#include <vector>

#include "pa/bigint.hpp"
#include "pa/density.hpp"
#include "pa/pwlinear.hpp"

namespace pa::powers {

/// E = a_1^N ∪ ... ∪ a_n^N. Bases may repeat.
class PowerBasis {
 public:
  /// Throws DomainError unless every base is > 1 and there is at least one.
  explicit PowerBasis(std::vector<BigInt> bases, unsigned exponent_cap = 256);

  const std::vector<BigInt>& bases() const { return bases_; }
  unsigned exponent_cap() const { return exponent_cap_; }

  /// Sorted distinct elements a_i^e with e <= cap.
  std::vector<BigInt> elements(unsigned cap) const;
  /// Sorted distinct elements <= bound.
  std::vector<BigInt> elements_up_to(const BigInt& bound) const;
  bool contains(const BigInt& value) const;

 private:
  std::vector<BigInt> bases_;
  unsigned exponent_cap_;
};

/// k_1 a_1^{e_1} + ... + k_n a_n^{e_n} = c.
struct PowerSumInstance {
  std::vector<Rational> k;
  PowerBasis basis;

  /// Throws DomainError on a zero coefficient or a length mismatch.
  void validate() const;
  /// Least b > 0 with b k_i integral for all i.
  BigInt common_denominator() const;
};

struct PowerSumSolution {
  BigInt c;
  std::vector<unsigned> exponents;
};

struct PowerSumResult {
  /// Sorted by c, one witness (the lexicographically least) per c.
  std::vector<PowerSumSolution> solutions;
  /// Per-base exponent bound used; -1 means the base admits no exponent.
  std::vector<int> caps;
  /// Set when the caps were clamped at the basis exponent ceiling.
  bool possibly_incomplete = false;
};

/// Exponent bounds beyond which no solution with |c| <= h exists. Same-sign
/// coefficients give exact bounds (clamped at the exponent ceiling if they
/// exceed it). Mixed signs use the ceiling itself. Either clamp sets
/// `possibly_incomplete`.
std::vector<int> exponent_caps(const PowerSumInstance& inst, const BigInt& h,
                               bool& possibly_incomplete);

/// Every exponent tuple within `caps` whose value c is an integer with
/// |c| <= h, in lexicographic exponent order.
std::vector<PowerSumSolution> enumerate_solutions(const PowerSumInstance& inst, const BigInt& h,
                                                  const std::vector<int>& caps);

PowerSumResult solve_power_sum(const PowerSumInstance& inst, const BigInt& h);

/// ceil((5 n^2 log2(b h))^n). Throws DomainError unless h > max a_i.
BigInt count_bound(const PowerSumInstance& inst, const BigInt& h);

struct CountingCheck {
  /// Solutions (x, c) with m < |c| <= h, m = max |k_i|, split by class.
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  BigInt bound;
  /// Per-base exponent bound from H(x) < (b h)^{4 n^2}; complete for S2.
  std::vector<int> caps;
};

CountingCheck counting_bound_check(const PowerSumInstance& inst, const BigInt& h);

/// |f(E^M) ∩ [-h, h]| for each window. Raises DomainError (with a witness)
/// when f is not total or has overlapping guards, LimitError when more than
/// `max_values` distinct image values are held at once.
DensityEstimate image_density_experiment(const PowerBasis& basis, const PWLinearFn& f,
                                         const std::vector<std::int64_t>& windows,
                                         std::size_t max_values = 50000000);

}  // namespace pa::powers

#endif  // PA_POWERS_HPP
