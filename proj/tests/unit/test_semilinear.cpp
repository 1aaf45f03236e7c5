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

#include "doctest.h"
#include "pa/error.hpp"
#include "pa/semilinear.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pa;
using namespace pa::semilinear;
using pa::testing::Rng;

namespace {

std::int64_t oracle_count(const Formula& f, std::int64_t h) {
  pa::testing::BruteForceEvaluator eval(f);
  std::string var = f.free_variables().empty() ? "x" : *f.free_variables().begin();
  std::int64_t count = 0;
  for (std::int64_t x = -h; x <= h; ++x) count += eval({{var, x}}) ? 1 : 0;
  return count;
}

ExactDensity density_of(const char* text) { return exact_density(semilinearize_1d(parse_formula(text))); }

}  // namespace

TEST_CASE("semilinearize: odd numbers above five") {
  SemilinearSet1 s = semilinearize_1d(parse_formula("x === 1 mod 2 & x > 5"));
  CHECK(s.period() == 2);
  CHECK(s.positive_residues() == std::set<std::int64_t>{1});
  CHECK(s.negative_residues().empty());
  CHECK(s.threshold() == 7);
  CHECK(s.insertions().empty());
  CHECK(s.deletions() == std::set<std::int64_t>{1, 3, 5});
}

TEST_CASE("semilinearize: naturals") {
  SemilinearSet1 s = semilinearize_1d(parse_formula("x >= 0"));
  CHECK(s.period() == 1);
  CHECK(s.positive_residues() == std::set<std::int64_t>{0});
  CHECK(s.negative_residues().empty());
  CHECK(s.insertions().empty());
  CHECK(s.deletions().empty());
}

TEST_CASE("semilinearize: point plus progression") {
  Formula f = parse_formula("x = 3 | x === 0 mod 4");
  SemilinearSet1 s = semilinearize_1d(f);
  CHECK(s.period() == 4);
  CHECK(s.positive_residues() == std::set<std::int64_t>{0});
  CHECK(s.negative_residues() == std::set<std::int64_t>{0});
  CHECK(s.insertions() == std::set<std::int64_t>{3});
  CHECK(s.deletions().empty());
  pa::testing::BruteForceEvaluator oracle(f);
  for (std::int64_t x = -100; x <= 100; ++x) CHECK(s.contains(x) == oracle({{"x", x}}));
}

TEST_CASE("semilinearize: rejects two free variables") {
  CHECK_THROWS_AS(semilinearize_1d(parse_formula("x < y")), DomainError);
}

TEST_CASE("semilinearize: quantified input") {
  SemilinearSet1 s = semilinearize_1d(parse_formula("exists y. x = 3*y & y > 2"));
  for (std::int64_t x = -30; x <= 30; ++x) CHECK(s.contains(x) == (x % 3 == 0 && x > 6));
}

TEST_CASE("exact density: examples") {
  CHECK(density_of("x >= 0").to_string() == "1/2");
  CHECK(density_of("x === 0 mod 3").to_string() == "1/3");
  CHECK(density_of("x < x").to_string() == "0");
  CHECK(density_of("x = x").to_string() == "1");
  std::int64_t h = 1000000;
  Formula f = parse_formula("x === 0 mod 3");
  double ratio = static_cast<double>(oracle_count(f, h)) / static_cast<double>(2 * h + 1);
  CHECK(std::abs(ratio - 1.0 / 3.0) < 1e-4);
}

TEST_CASE("membership and window counts match the oracle") {
  Rng rng(31);
  pa::testing::AtomShape shape;
  for (int i = 0; i < 60; ++i) {
    Formula f = pa::testing::random_qf(rng, {"x"}, 3, shape);
    SemilinearSet1 s = semilinearize_1d(f);
    pa::testing::BruteForceEvaluator oracle(f);
    INFO(f.to_string());
    for (std::int64_t x = -100; x <= 100; ++x) REQUIRE(s.contains(x) == oracle({{"x", x}}));
    for (std::int64_t h : {0, 1, 7, 50, 333}) CHECK(s.count_in_window(h) == oracle_count(f, h));
    CHECK(equal_sets(semilinearize_1d(s.to_formula("x")), s));
  }
}

TEST_CASE("density laws") {
  Rng rng(32);
  pa::testing::AtomShape shape;
  for (int i = 0; i < 60; ++i) {
    SemilinearSet1 a = semilinearize_1d(pa::testing::random_qf(rng, {"x"}, 3, shape));
    SemilinearSet1 b = semilinearize_1d(pa::testing::random_qf(rng, {"x"}, 3, shape));
    SemilinearSet1 b_only = set_difference(b, a);
    CHECK(exact_density(set_union(a, b_only)).value() ==
          exact_density(a).value() + exact_density(b_only).value());
    CHECK(exact_density(complement(a)).value() == 1 - exact_density(a).value());
    CHECK(equal_sets(complement(complement(a)), a));
    for (std::int64_t k = -10; k <= 10; ++k) {
      CHECK(exact_density(translate(a, k)) == exact_density(a));
      if (k != 0)
        CHECK(exact_density(scale(a, k)).value() ==
              exact_density(a).value() / Rational(std::llabs(k)));
    }
  }
}

TEST_CASE("set operations are pointwise") {
  Rng rng(33);
  pa::testing::AtomShape shape;
  for (int i = 0; i < 30; ++i) {
    SemilinearSet1 a = semilinearize_1d(pa::testing::random_qf(rng, {"x"}, 2, shape));
    SemilinearSet1 b = semilinearize_1d(pa::testing::random_qf(rng, {"x"}, 2, shape));
    SemilinearSet1 u = set_union(a, b), n = set_intersection(a, b);
    SemilinearSet1 t = translate(a, 4), s = scale(a, -3), r = reflect(b);
    for (std::int64_t x = -120; x <= 120; ++x) {
      CHECK(u.contains(x) == (a.contains(x) || b.contains(x)));
      CHECK(n.contains(x) == (a.contains(x) && b.contains(x)));
      CHECK(t.contains(x) == a.contains(x - 4));
      CHECK(s.contains(x) == (x % 3 == 0 && a.contains(-x / 3)));
      CHECK(r.contains(x) == b.contains(-x));
    }
  }
}

TEST_CASE("constructor validates exceptions") {
  CHECK_THROWS_AS(SemilinearSet1(2, {0}, {}, 3, {2}, {}), DomainError);
  CHECK_THROWS_AS(SemilinearSet1(2, {0}, {}, 3, {}, {5}), DomainError);
  CHECK_THROWS_AS(SemilinearSet1(0, {}, {}, 0), DomainError);
  CHECK_NOTHROW(SemilinearSet1(2, {0}, {}, 3, {1}, {2}));
}
