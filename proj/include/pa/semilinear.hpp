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

#ifndef PA_SEMILINEAR_HPP
#define PA_SEMILINEAR_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pa/bigint.hpp"
#include "pa/formula.hpp"

namespace pa::semilinear {

/// Reduced fraction in [0, 1].
struct ExactDensity {
  BigInt numerator;
  BigInt denominator = 1;

  Rational value() const { return Rational(numerator, denominator); }
  std::string to_string() const;
  friend bool operator==(const ExactDensity& a, const ExactDensity& b) {
    return a.numerator == b.numerator && a.denominator == b.denominator;
  }
};

/// Eventually periodic subset of Z. Outside [-T, T] membership of x is
/// decided by x mod P: residues in R+ for x >= 0, in R- for x < 0. The same
/// rule applies inside [-T, T] except at the listed insertions (members the
/// rule rejects) and deletions (non-members the rule accepts).
class SemilinearSet1 {
 public:
  SemilinearSet1(std::int64_t period, std::set<std::int64_t> positive,
                 std::set<std::int64_t> negative, std::int64_t threshold,
                 std::set<std::int64_t> insertions = {}, std::set<std::int64_t> deletions = {});

  /// The set agreeing with `member` on [-T, T], continued periodically with
  /// the residues `member` shows just outside that range.
  static SemilinearSet1 from_membership(std::int64_t period, std::int64_t threshold,
                                        const std::function<bool(std::int64_t)>& member);
  static SemilinearSet1 empty();
  static SemilinearSet1 integers();
  static SemilinearSet1 naturals();

  std::int64_t period() const { return period_; }
  const std::set<std::int64_t>& positive_residues() const { return positive_; }
  const std::set<std::int64_t>& negative_residues() const { return negative_; }
  std::int64_t threshold() const { return threshold_; }
  const std::set<std::int64_t>& insertions() const { return insertions_; }
  const std::set<std::int64_t>& deletions() const { return deletions_; }

  bool contains(std::int64_t x) const;
  /// |A ∩ [-h, h]| in O(P + exceptions).
  std::int64_t count_in_window(std::int64_t h) const;
  /// Equivalent quantifier-free formula in `var`.
  Formula to_formula(const std::string& var = "x") const;

  friend bool operator==(const SemilinearSet1& a, const SemilinearSet1& b);

 private:
  bool rule(std::int64_t x) const;
  std::int64_t rule_count(std::int64_t lo, std::int64_t hi) const;

  std::int64_t period_;
  std::set<std::int64_t> positive_;
  std::set<std::int64_t> negative_;
  std::int64_t threshold_;
  std::set<std::int64_t> insertions_;
  std::set<std::int64_t> deletions_;
};

/// Canonical form of the set defined by `f` in its single free variable.
/// Quantifiers are eliminated first. Throws DomainError when `f` has more
/// than one free variable.
SemilinearSet1 semilinearize_1d(const Formula& f);

ExactDensity exact_density(const SemilinearSet1& s);

/// True iff both represent the same subset of Z.
bool equal_sets(const SemilinearSet1& a, const SemilinearSet1& b);

SemilinearSet1 set_union(const SemilinearSet1& a, const SemilinearSet1& b);
SemilinearSet1 set_intersection(const SemilinearSet1& a, const SemilinearSet1& b);
SemilinearSet1 set_difference(const SemilinearSet1& a, const SemilinearSet1& b);
SemilinearSet1 complement(const SemilinearSet1& a);
/// A + k.
SemilinearSet1 translate(const SemilinearSet1& a, std::int64_t k);
/// kA = {k a : a in A}. k = 0 gives {0} or the empty set.
SemilinearSet1 scale(const SemilinearSet1& a, std::int64_t k);
/// -A.
SemilinearSet1 reflect(const SemilinearSet1& a);

}  // namespace pa::semilinear

#endif  // PA_SEMILINEAR_HPP
