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
#include "pa/formula.hpp"
#include "pa/qe.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pa;
using pa::testing::Rng;

namespace {

bool same_on_window(const Formula& a, const Formula& b, const std::vector<std::string>& vars,
                    long radius) {
  std::vector<long> point(vars.size(), -radius);
  while (true) {
    Assignment env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = point[i];
    if (eval_formula(a, env) != eval_formula(b, env)) return false;
    std::size_t i = 0;
    while (i < point.size() && point[i] == radius) point[i++] = -radius;
    if (i == point.size()) return true;
    ++point[i];
  }
}

}  // namespace

TEST_CASE("eliminate: examples") {
  CHECK(qe::cooper_eliminate(parse_formula("exists y. x = y + y")) ==
        parse_formula("x === 0 mod 2"));
  CHECK(qe::cooper_eliminate(parse_formula("exists y. (x < y & y < x + 2)")) ==
        parse_formula("0 = 0"));
  CHECK(qe::cooper_eliminate(parse_formula("exists y. (0 <= y & y <= x)")) ==
        parse_formula("0 <= x"));
}

TEST_CASE("decide: examples") {
  CHECK(qe::decide_sentence(parse_formula("forall x. exists y. (x = y + y | x = y + y + 1)")));
  CHECK_FALSE(qe::decide_sentence(parse_formula("exists x. (x < x)")));
  CHECK(qe::decide_sentence(parse_formula("forall x. (x === 0 mod 2 | x === 1 mod 2)")));
  CHECK_THROWS_AS(qe::decide_sentence(parse_formula("exists y. x < y")), DomainError);
}

TEST_CASE("decide: assorted sentences") {
  CHECK(qe::decide_sentence(parse_formula("forall x. exists y. 3*y <= x & x < 3*y + 3")));
  CHECK_FALSE(qe::decide_sentence(parse_formula("exists x. 2*x = 7")));
  CHECK(qe::decide_sentence(parse_formula("exists x. exists y. 6*x + 10*y = 2")));
  CHECK_FALSE(qe::decide_sentence(parse_formula("exists x. exists y. 6*x + 10*y = 3")));
  CHECK(qe::decide_sentence(
      parse_formula("forall x. x >= 8 -> exists a. exists b. a >= 0 & b >= 0 & x = 3*a + 5*b")));
  CHECK_FALSE(qe::decide_sentence(
      parse_formula("forall x. x >= 7 -> exists a. exists b. a >= 0 & b >= 0 & x = 3*a + 5*b")));
}

TEST_CASE("eliminate: free variables do not grow") {
  Formula f = parse_formula("exists y. forall z. (z < y | x + z >= w)");
  Formula g = qe::cooper_eliminate(f);
  CHECK(g.is_quantifier_free());
  for (const auto& v : g.free_variables()) CHECK(f.free_variables().count(v) == 1);
}

TEST_CASE("eliminate: window equivalence on random formulas") {
  Rng rng(4040);
  pa::testing::AtomShape shape;
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    int quantifiers = static_cast<int>(pa::testing::uniform(rng, 1, 3));
    std::vector<std::string> free{"x"};
    if (quantifiers == 1) free.push_back("w");
    Formula f = pa::testing::random_quantified(rng, free, quantifiers, shape);
    Formula g = qe::cooper_eliminate(f);
    INFO(f.to_string());
    REQUIRE(g.is_quantifier_free());
    pa::testing::BruteForceEvaluator oracle(f);
    std::vector<long> point(free.size(), -40);
    bool agree = true;
    while (agree) {
      Assignment env;
      pa::testing::IntEnv ienv;
      for (std::size_t k = 0; k < free.size(); ++k) {
        env[free[k]] = point[k];
        ienv[free[k]] = point[k];
      }
      agree = eval_formula(g, env) == oracle(ienv);
      std::size_t k = 0;
      while (k < point.size() && point[k] == 40) point[k++] = -40;
      if (k == point.size()) break;
      ++point[k];
    }
    CHECK(agree);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("eliminate: quantifier-free input is preserved up to equivalence") {
  Rng rng(99);
  pa::testing::AtomShape shape;
  std::vector<std::string> vars{"x", "y"};
  for (int i = 0; i < 100; ++i) {
    Formula f = pa::testing::random_qf(rng, vars, 3, shape);
    Formula g = qe::cooper_eliminate(f);
    CHECK(g.is_quantifier_free());
    CHECK(same_on_window(f, g, vars, 12));
    CHECK(same_on_window(g, qe::cooper_eliminate(g), vars, 12));
  }
}

TEST_CASE("decide agrees with evaluating the eliminated sentence") {
  Rng rng(515);
  pa::testing::AtomShape shape;
  for (int i = 0; i < 60; ++i) {
    Formula f = pa::testing::random_quantified(rng, {"x"}, 2, shape);
    Formula s = pa::testing::coin(rng) ? Formula::forall("x", f) : Formula::exists("x", f);
    Formula g = qe::cooper_eliminate(s);
    REQUIRE(g.free_variables().empty());
    CHECK(qe::decide_sentence(s) == eval_formula(g, {}));
  }
}
