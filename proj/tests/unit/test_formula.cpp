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
#include "support/generators.hpp"

using namespace pa;
using pa::testing::Rng;

namespace {

Term var(const char* name, long c = 1) { return Term::variable(name, c); }

}  // namespace

TEST_CASE("parse: existential doubling") {
  Formula f = parse_formula("exists y. x = y + y");
  CHECK(f == Formula::exists("y", Formula::eq(var("x"), var("y", 2))));
}

TEST_CASE("parse: congruence and strict comparison") {
  Formula f = parse_formula("x === 2 mod 3 & x > 0");
  CHECK(f == Formula::conjunction(Formula::cong(var("x"), 2, 3),
                                  Formula::less(Term(0), var("x"))));
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse_formula("x === 1 mod 0"), SyntaxError);
  try {
    parse_formula("x === 1 mod 0");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).find("modulus must be positive") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_formula("x < "), SyntaxError);
  CHECK_THROWS_AS(parse_formula("x * y < 3"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("(x < 3"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("x < 3 )"), SyntaxError);
}

TEST_CASE("parse: precedence") {
  Formula f = parse_formula("!a < 0 & b < 0 | c < 0 -> d < 0 -> e < 0");
  Formula a = Formula::less(var("a"), Term(0));
  Formula b = Formula::less(var("b"), Term(0));
  Formula c = Formula::less(var("c"), Term(0));
  Formula d = Formula::less(var("d"), Term(0));
  Formula e = Formula::less(var("e"), Term(0));
  CHECK(f == Formula::implication(
                 Formula::disjunction(Formula::conjunction(Formula::negation(a), b), c),
                 Formula::implication(d, e)));
  Formula q = parse_formula("exists y. y < 0 & x < 0");
  CHECK(q.kind() == FormulaKind::Exists);
  CHECK(q.body().kind() == FormulaKind::And);
}

TEST_CASE("parse: bound variables are renamed apart") {
  Formula f = parse_formula("x < 0 & exists x. x = 2*x + 1");
  CHECK(f.free_variables() == std::set<std::string>{"x"});
  const Formula& q = f.right();
  CHECK(q.variable() != "x");
}

TEST_CASE("eval: examples") {
  CHECK(eval_formula(Formula::cong(var("x"), 2, 3), {{"x", 5}}));
  CHECK_FALSE(eval_formula(Formula::less(var("x"), var("x")), {{"x", 0}}));
  Formula g = Formula::conjunction(Formula::less_eq(var("u") + var("x"), var("t")),
                                   Formula::cong(var("t"), 1, 2));
  CHECK(eval_formula(g, {{"u", 2}, {"x", 0}, {"t", 3}}));
  CHECK_THROWS_AS(eval_formula(Formula::less(var("x"), Term(0)), {}), DomainError);
}

TEST_CASE("eval: quantifiers delegate to the decision procedure") {
  Formula f = parse_formula("exists y. x = y + y");
  CHECK(eval_formula(f, {{"x", 10}}));
  CHECK_FALSE(eval_formula(f, {{"x", -7}}));
  CHECK_THROWS_AS(eval_formula(f, {}), DomainError);
}

TEST_CASE("print/parse round trip on random trees") {
  Rng rng(20261018);
  for (int i = 0; i < 1000; ++i) {
    Formula f = pa::testing::random_syntax_tree(rng, 6);
    std::string text = f.to_string();
    Formula g = parse_formula(text);
    INFO(text);
    REQUIRE(g == f);
    CHECK(g.to_string() == text);
  }
}

TEST_CASE("Boolean laws under evaluation") {
  Rng rng(7);
  std::vector<std::string> vars{"x", "y", "z"};
  pa::testing::AtomShape shape;
  for (int i = 0; i < 300; ++i) {
    Formula f = pa::testing::random_qf(rng, vars, 3, shape);
    Formula g = pa::testing::random_qf(rng, vars, 3, shape);
    Assignment a;
    for (const auto& v : vars) a[v] = pa::testing::uniform(rng, -30, 30);
    bool ef = eval_formula(f, a);
    bool eg = eval_formula(g, a);
    CHECK(eval_formula(Formula::negation(f), a) == !ef);
    CHECK(eval_formula(Formula::conjunction(f, g), a) == (ef && eg));
    CHECK(eval_formula(Formula::disjunction(f, g), a) == (ef || eg));
    CHECK(eval_formula(Formula::implication(f, g), a) == (!ef || eg));
  }
}

TEST_CASE("congruence canonicalization") {
  for (long n = 1; n <= 7; ++n) {
    for (long k = -20; k <= 20; ++k) {
      Formula c = Formula::cong(var("x"), k, n);
      long r = ((k % n) + n) % n;
      CHECK(c.residue() == r);
      CHECK(c.modulus() == n);
      for (long x = -15; x <= 15; ++x)
        CHECK(eval_formula(c, {{"x", x}}) == eval_formula(Formula::cong(var("x"), r, n), {{"x", x}}));
    }
  }
  Formula shifted = Formula::cong(var("x") + Term(4), 1, 3);
  CHECK(shifted == Formula::cong(var("x"), 0, 3));
  CHECK_THROWS_AS(Formula::cong(var("x"), 0, 0), DomainError);
}

TEST_CASE("term canonical form") {
  Term t = var("x", 3) + var("y") - var("x", 3);
  CHECK(t.coefficients().size() == 1);
  CHECK(t.to_string() == "y");
  CHECK((var("x") - var("y", 2) + Term(3)).to_string() == "x - 2*y + 3");
  CHECK((-var("x")).to_string() == "-x");
  CHECK(Term().to_string() == "0");
}

TEST_CASE("substitution avoids capture") {
  Formula f = parse_formula("exists y. x < y");
  Formula g = f.substitute("x", var("y") + Term(1));
  CHECK(g.free_variables() == std::set<std::string>{"y"});
  CHECK(eval_formula(g, {{"y", 3}}));
}
