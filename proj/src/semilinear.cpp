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

#include "pa/semilinear.hpp"

#include <algorithm>
#include <cstdlib>

#include "pa/compiled.hpp"
#include "pa/error.hpp"
#include "pa/qe.hpp"

namespace pa::semilinear {

namespace {

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod64(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return to_int64(lcm(BigInt(a), BigInt(b)));
}

void collect_bounds(const Formula& f, BigInt& period, BigInt& max_constant) {
  switch (f.kind()) {
    case FormulaKind::Less:
    case FormulaKind::LessEq:
    case FormulaKind::Eq: {
      BigInt c = abs((f.lhs() - f.rhs()).constant());
      if (c > max_constant) max_constant = c;
      return;
    }
    case FormulaKind::Cong: {
      period = lcm(period, f.modulus());
      BigInt c = abs(f.cong_term().constant());
      if (f.residue() > c) c = f.residue();
      if (c > max_constant) max_constant = c;
      return;
    }
    case FormulaKind::Not:
      collect_bounds(f.left(), period, max_constant);
      return;
    default:
      collect_bounds(f.left(), period, max_constant);
      collect_bounds(f.right(), period, max_constant);
      return;
  }
}

}  // namespace

std::string ExactDensity::to_string() const {
  return pa::to_string(Rational(numerator, denominator));
}

SemilinearSet1::SemilinearSet1(std::int64_t period, std::set<std::int64_t> positive,
                               std::set<std::int64_t> negative, std::int64_t threshold,
                               std::set<std::int64_t> insertions,
                               std::set<std::int64_t> deletions)
    : period_(period),
      positive_(std::move(positive)),
      negative_(std::move(negative)),
      threshold_(threshold),
      insertions_(std::move(insertions)),
      deletions_(std::move(deletions)) {
  if (period_ < 1) throw DomainError("period must be positive");
  if (threshold_ < 0) throw DomainError("threshold must be nonnegative");
  for (const auto* residues : {&positive_, &negative_})
    for (auto r : *residues)
      if (r < 0 || r >= period_) throw DomainError("residue outside [0, period)");
  for (auto x : insertions_)
    if (std::llabs(x) > threshold_ || rule(x))
      throw DomainError("insertion " + std::to_string(x) + " is not an exception");
  for (auto x : deletions_)
    if (std::llabs(x) > threshold_ || !rule(x))
      throw DomainError("deletion " + std::to_string(x) + " is not an exception");
}

SemilinearSet1 SemilinearSet1::from_membership(std::int64_t period, std::int64_t threshold,
                                               const std::function<bool(std::int64_t)>& member) {
  if (period < 1) throw DomainError("period must be positive");
  std::set<std::int64_t> positive, negative, insertions, deletions;
  for (std::int64_t i = 1; i <= period; ++i) {
    if (member(threshold + i)) positive.insert(mod64(threshold + i, period));
    if (member(-threshold - i)) negative.insert(mod64(-threshold - i, period));
  }
  SemilinearSet1 base(period, positive, negative, threshold);
  for (std::int64_t x = -threshold; x <= threshold; ++x) {
    bool in = member(x);
    if (in && !base.rule(x)) insertions.insert(x);
    if (!in && base.rule(x)) deletions.insert(x);
  }
  return SemilinearSet1(period, std::move(positive), std::move(negative), threshold,
                        std::move(insertions), std::move(deletions));
}

SemilinearSet1 SemilinearSet1::empty() { return SemilinearSet1(1, {}, {}, 0); }
SemilinearSet1 SemilinearSet1::integers() { return SemilinearSet1(1, {0}, {0}, 0); }
SemilinearSet1 SemilinearSet1::naturals() { return SemilinearSet1(1, {0}, {}, 0); }

bool SemilinearSet1::rule(std::int64_t x) const {
  std::int64_t r = mod64(x, period_);
  return x >= 0 ? positive_.count(r) != 0 : negative_.count(r) != 0;
}

bool SemilinearSet1::contains(std::int64_t x) const {
  if (std::llabs(x) <= threshold_) {
    if (insertions_.count(x)) return true;
    if (deletions_.count(x)) return false;
  }
  return rule(x);
}

std::int64_t SemilinearSet1::rule_count(std::int64_t lo, std::int64_t hi) const {
  auto count = [&](std::int64_t a, std::int64_t b, const std::set<std::int64_t>& residues) {
    std::int64_t total = 0;
    if (a > b) return total;
    for (auto r : residues)
      total += floor_div64(b - r, period_) - floor_div64(a - 1 - r, period_);
    return total;
  };
  return count(std::max<std::int64_t>(lo, 0), hi, positive_) +
         count(lo, std::min<std::int64_t>(hi, -1), negative_);
}

std::int64_t SemilinearSet1::count_in_window(std::int64_t h) const {
  if (h < 0) return 0;
  std::int64_t total = rule_count(-h, h);
  for (auto x : insertions_)
    if (std::llabs(x) <= h) ++total;
  for (auto x : deletions_)
    if (std::llabs(x) <= h) --total;
  return total;
}

Formula SemilinearSet1::to_formula(const std::string& var) const {
  Term x = Term::variable(var);
  std::vector<Formula> pos, neg;
  for (auto r : positive_) pos.push_back(Formula::cong(x, r, period_));
  for (auto r : negative_) neg.push_back(Formula::cong(x, r, period_));
  std::vector<Formula> parts;
  if (!pos.empty())
    parts.push_back(Formula::conjunction(Formula::less_eq(Term(0), x), Formula::any_of(pos)));
  if (!neg.empty())
    parts.push_back(Formula::conjunction(Formula::less(x, Term(0)), Formula::any_of(neg)));
  Formula result = Formula::any_of(parts);
  if (!deletions_.empty()) {
    std::vector<Formula> keep{result};
    for (auto d : deletions_) keep.push_back(Formula::negation(Formula::eq(x, Term(d))));
    result = Formula::all_of(keep);
  }
  if (!insertions_.empty()) {
    std::vector<Formula> add{result};
    for (auto i : insertions_) add.push_back(Formula::eq(x, Term(i)));
    result = Formula::any_of(add);
  }
  return result;
}

bool operator==(const SemilinearSet1& a, const SemilinearSet1& b) {
  return a.period_ == b.period_ && a.threshold_ == b.threshold_ && a.positive_ == b.positive_ &&
         a.negative_ == b.negative_ && a.insertions_ == b.insertions_ &&
         a.deletions_ == b.deletions_;
}

SemilinearSet1 semilinearize_1d(const Formula& f) {
  Formula g = f.is_quantifier_free() ? f : qe::cooper_eliminate(f);
  auto free = g.free_variables();
  if (free.size() > 1) throw DomainError("expected at most one free variable");
  std::string var = free.empty() ? "x" : *free.begin();
  BigInt period = 1, max_constant = 0;
  collect_bounds(g, period, max_constant);
  BigInt threshold = max_constant + period;
  if (period > 100000000 || threshold > 100000000)
    throw LimitError("period or threshold too large for an explicit canonical form");
  CompiledFormula member(g, {var});
  return SemilinearSet1::from_membership(to_int64(period), to_int64(threshold),
                                         [&](std::int64_t x) { return member(&x); });
}

ExactDensity exact_density(const SemilinearSet1& s) {
  Rational d(BigInt(s.positive_residues().size() + s.negative_residues().size()),
             BigInt(2) * s.period());
  return {numerator(d), denominator(d)};
}

bool equal_sets(const SemilinearSet1& a, const SemilinearSet1& b) {
  std::int64_t period = lcm64(a.period(), b.period());
  std::int64_t bound = std::max(a.threshold(), b.threshold()) + period;
  for (std::int64_t x = -bound; x <= bound; ++x)
    if (a.contains(x) != b.contains(x)) return false;
  return true;
}

namespace {

SemilinearSet1 combine(const SemilinearSet1& a, const SemilinearSet1& b,
                       bool (*op)(bool, bool)) {
  return SemilinearSet1::from_membership(
      lcm64(a.period(), b.period()), std::max(a.threshold(), b.threshold()),
      [&](std::int64_t x) { return op(a.contains(x), b.contains(x)); });
}

}  // namespace

SemilinearSet1 set_union(const SemilinearSet1& a, const SemilinearSet1& b) {
  return combine(a, b, [](bool p, bool q) { return p || q; });
}

SemilinearSet1 set_intersection(const SemilinearSet1& a, const SemilinearSet1& b) {
  return combine(a, b, [](bool p, bool q) { return p && q; });
}

SemilinearSet1 set_difference(const SemilinearSet1& a, const SemilinearSet1& b) {
  return combine(a, b, [](bool p, bool q) { return p && !q; });
}

SemilinearSet1 complement(const SemilinearSet1& a) {
  return SemilinearSet1::from_membership(a.period(), a.threshold(),
                                         [&](std::int64_t x) { return !a.contains(x); });
}

SemilinearSet1 translate(const SemilinearSet1& a, std::int64_t k) {
  return SemilinearSet1::from_membership(a.period(), a.threshold() + std::llabs(k),
                                         [&](std::int64_t x) { return a.contains(x - k); });
}

SemilinearSet1 reflect(const SemilinearSet1& a) {
  return SemilinearSet1::from_membership(a.period(), a.threshold(),
                                         [&](std::int64_t x) { return a.contains(-x); });
}

SemilinearSet1 scale(const SemilinearSet1& a, std::int64_t k) {
  if (k == 0) {
    bool nonempty = a.count_in_window(a.threshold() + a.period()) > 0;
    return SemilinearSet1::from_membership(1, 0, [&](std::int64_t x) { return nonempty && x == 0; });
  }
  if (k < 0) return scale(reflect(a), -k);
  return SemilinearSet1::from_membership(
      a.period() * k, a.threshold() * k,
      [&](std::int64_t x) { return x % k == 0 && a.contains(x / k); });
}

}  // namespace pa::semilinear
