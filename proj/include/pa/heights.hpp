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

#ifndef PA_HEIGHTS_HPP
#define PA_HEIGHTS_HPP

#include <string_view>
#include <vector>

#include "pa/bigint.hpp"

namespace pa::heights {

/// (a_1/b, ..., a_n/b) with b > 0 and gcd(a_1, ..., a_n, b) = 1.
class RationalTuple {
 public:
  /// Reduces to canonical form. Throws DomainError if b = 0 or n = 0.
  RationalTuple(std::vector<BigInt> numerators, BigInt denominator);
  static RationalTuple from_rationals(const std::vector<Rational>& values);
  /// "3/4,5/4" or "2,3".
  static RationalTuple parse(std::string_view text);

  const std::vector<BigInt>& numerators() const { return numerators_; }
  const BigInt& denominator() const { return denominator_; }
  std::size_t size() const { return numerators_.size(); }
  std::vector<Rational> values() const;

 private:
  std::vector<BigInt> numerators_;
  BigInt denominator_;
};

struct HeightValue {
  BigInt H;
  /// Natural logarithm of H.
  double log_h = 0.0;
};

/// max{|a_1|, ..., |a_n|, b}.
HeightValue height_rational(const RationalTuple& x);
/// Product over the places of Q (primes dividing b, and infinity) of
/// max{1, |x_1|_v, ..., |x_n|_v}.
HeightValue height_by_places(const RationalTuple& x);

/// Prime factorization by trial division; throws LimitError when a cofactor
/// above 10^14 cannot be certified prime.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);

/// 2^{30 n^2} (32 n^2)^r d^{3r + 2n}.
BigInt subspace_count_bound(unsigned n, unsigned r, unsigned d);

enum class HeightClass { S1, S2 };

/// S1 iff H((k_1/c, ..., k_n/c))^{4 n^2} <= H(x), compared exactly.
HeightClass classify_s1_s2(const std::vector<BigInt>& x, const BigInt& c,
                           const std::vector<Rational>& k);

}  // namespace pa::heights

#endif  // PA_HEIGHTS_HPP
