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

#include <random>
#include <set>

#include "doctest.h"
#include "pa/error.hpp"
#include "pa/powers.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pa;
using namespace pa::powers;
using pa::testing::Rng;

namespace {

PowerSumInstance instance(std::vector<Rational> k, std::vector<BigInt> a, unsigned cap = 256) {
  return {std::move(k), PowerBasis(std::move(a), cap)};
}

std::vector<BigInt> values(const PowerSumResult& r) {
  std::vector<BigInt> out;
  for (const auto& s : r.solutions) out.push_back(s.c);
  return out;
}

}  // namespace

TEST_CASE("solve: examples") {
  CHECK(values(solve_power_sum(instance({1}, {2}), 10)) == std::vector<BigInt>{1, 2, 4, 8});
  CHECK(values(solve_power_sum(instance({-1}, {2}), 5)) == std::vector<BigInt>{-4, -2, -1});
  PowerSumResult r = solve_power_sum(instance({1, 1}, {2, 3}), 20);
  CHECK_FALSE(r.possibly_incomplete);
  std::vector<BigInt> nonneg;
  for (const auto& c : values(r))
    if (c >= 0) nonneg.push_back(c);
  CHECK(nonneg == std::vector<BigInt>{2, 3, 4, 5, 7, 9, 10, 11, 13, 17, 19});
}

TEST_CASE("solve: witnesses reproduce c") {
  PowerSumInstance inst = instance({Rational(1, 2), Rational(-3), Rational(2)}, {2, 3, 5}, 20);
  PowerSumResult r = solve_power_sum(inst, 300);
  CHECK(r.possibly_incomplete);
  std::set<BigInt> seen;
  for (const auto& s : r.solutions) {
    Rational sum = 0;
    for (std::size_t i = 0; i < 3; ++i)
      sum += inst.k[i] * Rational(pow(inst.basis.bases()[i], s.exponents[i]));
    CHECK(sum == Rational(s.c));
    CHECK(seen.insert(s.c).second);
  }
}

TEST_CASE("solve: agrees with the naive oracle") {
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = static_cast<std::size_t>(pa::testing::uniform(rng, 1, 3));
    std::vector<Rational> k;
    std::vector<BigInt> a;
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t num = pa::testing::uniform(rng, 1, 3) * (pa::testing::coin(rng) ? 1 : -1);
      std::int64_t den = pa::testing::coin(rng, 0.25) ? 2 : 1;
      k.emplace_back(num, den);
      a.emplace_back(pa::testing::uniform(rng, 2, 7));
    }
    BigInt h = pa::testing::uniform(rng, 1, 1000);
    int ceiling = n == 3 ? 14 : 40;
    PowerSumInstance inst = instance(k, a, static_cast<unsigned>(ceiling));
    PowerSumResult r = solve_power_sum(inst, h);
    auto oracle = pa::testing::naive_power_sums(k, a, h, pa::testing::naive_caps(k, a, h, ceiling));
    std::vector<BigInt> expected;
    for (const auto& [c, count] : oracle) expected.push_back(c);
    CHECK(values(r) == expected);
  }
}

TEST_CASE("same-sign caps are exact, mixed signs are flagged") {
  bool incomplete = true;
  auto caps = exponent_caps(instance({1, 1}, {2, 3}), 20, incomplete);
  CHECK_FALSE(incomplete);
  CHECK(caps == std::vector<int>{4, 2});
  caps = exponent_caps(instance({1, -1}, {2, 3}, 50), 20, incomplete);
  CHECK(incomplete);
  CHECK(caps == std::vector<int>{50, 50});
  // 2^8 - 3^5 = 13: cancellation reaches past any cap derived from h alone.
  auto found = enumerate_solutions(instance({1, -1}, {2, 3}, 50), 20, caps);
  CHECK(std::any_of(found.begin(), found.end(), [](const PowerSumSolution& s) {
    return s.c == 13 && s.exponents == std::vector<unsigned>{8, 5};
  }));
  caps = exponent_caps(instance({5, 5}, {2, 3}), 7, incomplete);
  CHECK(caps == std::vector<int>{-1, -1});
  CHECK(solve_power_sum(instance({5, 5}, {2, 3}), 7).solutions.empty());
}

TEST_CASE("duplicate bases with opposite signs") {
  PowerSumResult r = solve_power_sum(instance({1, -1}, {2, 2}, 30), 10);
  CHECK(r.possibly_incomplete);
  auto oracle = pa::testing::naive_power_sums({1, -1}, {2, 2}, 10, {30, 30});
  std::vector<BigInt> expected;
  for (const auto& [c, count] : oracle) expected.push_back(c);
  CHECK(values(r) == expected);
  CHECK(oracle.at(0) == 31);
}

TEST_CASE("count bound: examples") {
  CHECK(count_bound(instance({1, 1}, {2, 3}), 8) == 3600);
  CHECK(count_bound(instance({1}, {2}), 4) == 10);
  CHECK(count_bound(instance({Rational(1, 2), 1}, {2, 3}), 8) == 6400);
  CHECK_THROWS_AS(count_bound(instance({1, 1}, {2, 3}), 3), DomainError);
  // (20 log2 10)^2 = 4414.2...
  CHECK(count_bound(instance({1, 1}, {2, 3}), 10) == 4415);
}

TEST_CASE("counting bound holds for S2 solutions") {
  CountingCheck check = counting_bound_check(instance({1, -1}, {2, 3}), 100);
  CHECK(check.s2 + check.s1 > 0);
  CHECK(BigInt(check.s2) <= check.bound);
  check = counting_bound_check(instance({Rational(1, 2), 3, -1}, {2, 3, 5}), 50);
  CHECK(BigInt(check.s2) <= check.bound);
}

TEST_CASE("image density: examples") {
  PowerBasis b23({2, 3});
  PWLinearFn diff = PWLinearFn::affine({"x", "y"}, Term::variable("x") - Term::variable("y"));
  DensityEstimate e = image_density_experiment(b23, diff, {100, 1000, 10000});
  REQUIRE(e.ratios.size() == 3);
  CHECK(e.ratios[0] > e.ratios[1]);
  CHECK(e.ratios[1] > e.ratios[2]);
  CHECK(e.possibly_incomplete);

  PowerBasis b2({2});
  std::int64_t h = std::int64_t{1} << 40;
  DensityEstimate single =
      image_density_experiment(b2, PWLinearFn::affine({"x"}, Term::variable("x")), {h});
  CHECK(single.counts[0] == 41);
  CHECK(single.ratios[0] == Rational(41, (BigInt(1) << 41) + 1));
  CHECK_FALSE(single.possibly_incomplete);

  DensityEstimate zero = image_density_experiment(b23, PWLinearFn::affine({"x"}, Term(0)), {5, 50});
  CHECK(zero.ratios[0] == Rational(1, 11));
  CHECK(zero.ratios[1] == Rational(1, 101));
}

TEST_CASE("image density agrees with enumeration") {
  PowerBasis b23({2, 3}, 24);
  Term f = Term::variable("x") + Term::variable("y", 2) - Term::variable("z");
  DensityEstimate e =
      image_density_experiment(b23, PWLinearFn::affine({"x", "y", "z"}, f), {10, 100, 1000});
  std::vector<BigInt> E = b23.elements(24);
  std::set<BigInt> image;
  for (const auto& x : E)
    for (const auto& y : E)
      for (const auto& z : E) {
        BigInt v = x + 2 * y - z;
        if (abs(v) <= 1000) image.insert(v);
      }
  std::vector<std::int64_t> expected;
  for (std::int64_t h : {10, 100, 1000}) {
    std::int64_t count = 0;
    for (const auto& v : image) count += abs(v) <= h ? 1 : 0;
    expected.push_back(count);
  }
  CHECK(e.counts == expected);
}

TEST_CASE("image density: piecewise function") {
  // |x - y| written with two pieces.
  Term d = Term::variable("x") - Term::variable("y");
  PWLinearFn f({"x", "y"}, {{Formula::less_eq(Term(0), d), d, 1},
                            {Formula::less(d, Term(0)), -d, 1}});
  PowerBasis b23({2, 3}, 20);
  DensityEstimate e = image_density_experiment(b23, f, {50});
  std::set<BigInt> image;
  for (const auto& x : b23.elements(20))
    for (const auto& y : b23.elements(20))
      if (abs(x - y) <= 50) image.insert(abs(x - y));
  CHECK(e.counts[0] == static_cast<std::int64_t>(image.size()));
}

TEST_CASE("image density rejects bad functions") {
  Term x = Term::variable("x");
  PWLinearFn overlap({"x"}, {{Formula::less_eq(Term(0), x), x, 1}, {Formula::less_eq(x, Term(0)), -x, 1}});
  CHECK_THROWS_WITH_AS(image_density_experiment(PowerBasis({2}), overlap, {10}),
                       doctest::Contains("overlap"), DomainError);
  PWLinearFn partial({"x"}, {{Formula::less(Term(0), x), x, 1}});
  CHECK_THROWS_WITH_AS(image_density_experiment(PowerBasis({2}), partial, {10}),
                       doctest::Contains("not total"), DomainError);
  CHECK_THROWS_AS(image_density_experiment(PowerBasis({2}), PWLinearFn::affine({"x"}, x), {10, 5}),
                  DomainError);
  CHECK_THROWS_AS(PowerBasis({1}), DomainError);
}
