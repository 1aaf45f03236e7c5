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

#include <set>

#include "doctest.h"
#include "pa/cells.hpp"
#include "pa/compiled.hpp"
#include "pa/error.hpp"
#include "support/cell_cases.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pa;
using namespace pa::cells;
using pa::testing::Rng;
using pa::testing::TestCell;
using pa::testing::direct_eval;
using pa::testing::random_family;

namespace {

Term v(const std::string& name) { return Term::variable(name); }
Term k(long long c) { return Term(BigInt(c)); }
PWLinearFn fn(std::vector<std::string> vars, Term body) {
  return PWLinearFn::affine(std::move(vars), std::move(body));
}

std::vector<Tuple> range1(std::int64_t lo, std::int64_t hi) {
  std::vector<Tuple> out;
  for (std::int64_t x = lo; x <= hi; ++x) out.push_back({x});
  return out;
}

FiberFamily family1(std::vector<std::vector<std::int64_t>> sets) {
  FiberFamily f;
  f.arity = 1;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    f.labels.push_back("a" + std::to_string(i));
    std::vector<Tuple> members;
    for (auto u : sets[i]) members.push_back({u});
    f.members.push_back(members);
  }
  return f;
}

// X = {(u, x) : u <= x}
FamilyExpr u_le_x(std::vector<std::vector<std::int64_t>> sets) {
  return FamilyExpr{{"u"}, {"x"}, Formula::less_eq(v("u"), v("x")), family1(std::move(sets))};
}

}  // namespace

TEST_CASE("weak cell: type and formula") {
  WeakCell c({"x"}, "t", Formula::less_eq(k(0), v("x")), fn({"x"}, v("x")), std::nullopt, 7, 3);
  CHECK(c.type() == 2);
  CHECK(c.residue() == 1);
  CHECK(c.contains({{"x", 2}, {"t", 4}}));
  CHECK_FALSE(c.contains({{"x", 2}, {"t", 3}}));
  CHECK_FALSE(c.contains({{"x", 5}, {"t", 4}}));
  CHECK(WeakCell::empty({"x"}, "t").is_canonical_empty());
  CHECK_THROWS_AS(WeakCell({"x"}, "t", Formula::truth(true), std::nullopt, std::nullopt, 0, 0),
                  DomainError);
  CHECK_THROWS_AS(WeakCell({"x"}, "t", Formula::less(v("y"), k(0)), std::nullopt, std::nullopt, 0, 1),
                  DomainError);
  CHECK_THROWS_AS(WeakCell({"x", "t"}, "t", Formula::truth(true), std::nullopt, std::nullopt, 0, 1),
                  DomainError);
}

TEST_CASE("diamond: CRT example") {
  Formula sa = Formula::conjunction(Formula::less_eq(k(0), v("x")), Formula::less_eq(v("x"), k(5)));
  Formula sb = Formula::conjunction(Formula::less_eq(k(0), v("y")), Formula::less_eq(v("y"), k(5)));
  WeakCell a({"x"}, "t", sa, fn({"x"}, v("x")), std::nullopt, 1, 2);
  WeakCell b({"y"}, "t", sb, std::nullopt, fn({"y"}, v("y") + k(10)), 2, 3);
  WeakCell c = diamond_cells(a, b, 1);
  CHECK(c.variables() == std::vector<std::string>{"x", "y"});
  CHECK(c.type() == 4);
  CHECK(c.residue() == 5);
  CHECK(c.modulus() == 6);
  CHECK(c.contains({{"x", 0}, {"y", 0}, {"t", 5}}));
  CHECK_FALSE(c.contains({{"x", 0}, {"y", 0}, {"t", 11}}));

  // pointwise against the defining predicate on [-2,8]^3
  CompiledFormula member(c.to_formula(), c.all_variables());
  int checked = 0;
  for (std::int64_t x = -2; x <= 8; ++x)
    for (std::int64_t y = -2; y <= 8; ++y)
      for (std::int64_t t = -2; t <= 8; ++t) {
        bool in_a = 0 <= x && x <= 5 && x <= t && ((t % 2) + 2) % 2 == 1;
        bool in_b = 0 <= y && y <= 5 && t <= y + 10 && ((t % 3) + 3) % 3 == 2;
        CHECK(member({x, y, t}) == (in_a && in_b));
        ++checked;
      }
  CHECK(checked == 1331);
}

TEST_CASE("diamond: incompatible congruences give the empty cell") {
  WeakCell a({"x"}, "t", Formula::truth(true), std::nullopt, std::nullopt, 0, 2);
  WeakCell b({"x"}, "t", Formula::truth(true), std::nullopt, std::nullopt, 1, 2);
  WeakCell c = diamond_cells(a, b, 1);
  CHECK(c.is_canonical_empty());
  CHECK(c.modulus() == 1);
  CHECK(c.residue() == 0);
  CHECK(c.type() == 1);
  CHECK(c.variables().size() == 2);
  CHECK(c.variables()[0] != c.variables()[1]);
}

TEST_CASE("diamond: arity mismatch") {
  WeakCell a({"x"}, "t", Formula::truth(true), std::nullopt, std::nullopt, 0, 1);
  WeakCell b({"x", "z"}, "t", Formula::truth(true), std::nullopt, std::nullopt, 0, 1);
  CHECK_THROWS_AS(diamond_cells(a, b, 1), DomainError);
  CHECK_THROWS_AS(diamond_cells(a, a, 2), DomainError);
}

TEST_CASE("diamond: random pairs agree with the defining predicate") {
  Rng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t m = testing::uniform(rng, 0, 2), n = testing::uniform(rng, 0, 2);
    TestCell a = testing::random_test_cell(rng, m + n + 1);
    TestCell b = testing::random_test_cell(rng, m + n + 1);
    auto report = testing::check_diamond(a, b, m, n, 20, rng, 100000, 300);
    INFO("trial " << trial << " m=" << m << " n=" << n << " at " << report.first_mismatch);
    CHECK(report.mismatches == 0);
    CHECK(report.points > 0);
  }
}

TEST_CASE("decompose: cell-shaped input") {
  Formula x = parse_formula("x >= 0 & x <= y & y <= 2*x & y === 0 mod 2");
  auto cells = decompose_to_weak_cells(x, {"x", "y"});
  REQUIRE(cells.size() == 1);
  const WeakCell& c = cells[0];
  CHECK(c.type() == 4);
  CHECK(c.residue() == 0);
  CHECK(c.modulus() == 2);
  for (std::int64_t a = -10; a <= 10; ++a) {
    Assignment at{{"x", a}};
    CHECK(eval_formula(c.base(), at) == (a >= 0));
    if (a >= 0) {
      CHECK(c.lower()->evaluate(at) == a);
      CHECK(c.upper()->evaluate(at) == 2 * a);
    }
  }
}

TEST_CASE("decompose: two rays") {
  auto cells = decompose_to_weak_cells(parse_formula("y >= 0 | y < -5"), {"y"});
  REQUIRE(cells.size() == 2);
  std::set<int> types{cells[0].type(), cells[1].type()};
  CHECK(types == std::set<int>{2, 3});
  for (std::int64_t y = -20; y <= 20; ++y) {
    int hits = 0;
    for (const auto& c : cells) hits += c.contains({{"y", y}});
    CHECK(hits == ((y >= 0 || y < -5) ? 1 : 0));
  }
}

TEST_CASE("decompose: no t-atoms and false input") {
  auto cells = decompose_to_weak_cells(parse_formula("x > 2"), {"x", "t"});
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].type() == 1);
  CHECK(decompose_to_weak_cells(parse_formula("x < x"), {"x", "t"}).empty());
  CHECK_THROWS_AS(decompose_to_weak_cells(parse_formula("q > 0"), {"x"}), DomainError);
}

TEST_CASE("decompose: random formulas are partitioned") {
  Rng rng(99);
  testing::AtomShape shape{3, 6, 4};
  std::vector<std::string> vars{"x", "y", "z"};
  std::vector<Formula> fixed{
      parse_formula("z >= x & z <= y + 3 | 2*z < x - y & z === 1 mod 3"),
      parse_formula("3*z > x | -2*z >= y - 1 | (z + x === 2 mod 4 & z < 7)"),
      parse_formula("!(x <= z & z <= y) & 3*z - x < 2*y + 1"),
  };
  for (int trial = 0; trial < 30; ++trial) {
    Formula f = trial < static_cast<int>(fixed.size()) ? fixed[trial]
                                                        : testing::random_qf(rng, vars, 3, shape);
    auto cells = decompose_to_weak_cells(f, vars);
    std::vector<CompiledFormula> members;
    for (const auto& c : cells) members.emplace_back(c.to_formula(), c.all_variables());
    testing::BruteForceEvaluator oracle(f);
    int bad = 0;
    for (std::int64_t x = -25; x <= 25; ++x)
      for (std::int64_t y = -25; y <= 25; ++y)
        for (std::int64_t z = -25; z <= 25; ++z) {
          std::int64_t p[3] = {x, y, z};
          int hits = 0;
          for (const auto& mbr : members) hits += mbr(p);
          bad += hits != (oracle({{"x", x}, {"y", y}, {"z", z}}) ? 1 : 0);
        }
    INFO("formula " << f.to_string() << " cells " << cells.size());
    CHECK(bad == 0);
  }
}

TEST_CASE("eval_family_expr: examples") {
  CHECK(eval_family_expr(u_le_x({{2, 5}}), {{0, 10}}) == range1(5, 10));
  CHECK(eval_family_expr(u_le_x({}), {{0, 10}}).empty());
  CHECK(eval_family_expr(u_le_x({{2}, {7}}), {{0, 10}}) == range1(2, 10));
  // empty P: the intersection is everything
  CHECK(eval_family_expr(u_le_x({{}}), {{0, 3}}) == range1(0, 3));
  CHECK_THROWS_AS(eval_family_expr(u_le_x({{2}}), {{0, 1}, {0, 1}}), DomainError);
  FamilyExpr bad = u_le_x({{2}});
  bad.family.members[0][0].push_back(1);
  CHECK_THROWS_AS(eval_family_expr(bad, {{0, 1}}), DomainError);
}

TEST_CASE("family_boolean: examples") {
  FamilyExpr ge5 = u_le_x({{2, 5}});
  FamilyExpr ge2 = u_le_x({{2}});
  CHECK(eval_family_expr(family_boolean(BooleanOp::Complement, ge5), {{0, 10}}) == range1(0, 4));
  CHECK(eval_family_expr(family_boolean(BooleanOp::Intersect, ge5, &ge2), {{0, 10}}) ==
        range1(5, 10));
  CHECK(eval_family_expr(family_boolean(BooleanOp::Complement, u_le_x({})), {{0, 10}}) ==
        range1(0, 10));
  CHECK_THROWS_AS(family_boolean(BooleanOp::Complement, u_le_x({{1, 2, 3}, {1, 2, 3}}), nullptr, 8),
                  LimitError);
  CHECK_THROWS_AS(family_boolean(BooleanOp::Intersect, ge5), DomainError);
}

TEST_CASE("family_boolean: random complement and intersection") {
  Rng rng(7);
  testing::AtomShape shape{3, 5, 4};
  Window w{{-8, 8}, {-8, 8}};
  for (int trial = 0; trial < 25; ++trial) {
    FamilyExpr a{{"u"}, {"x", "y"}, testing::random_qf(rng, {"u", "x", "y"}, 2, shape),
                 random_family(rng, 1, 2, 2, -3, 3)};
    FamilyExpr b{{"u"}, {"x", "y"}, testing::random_qf(rng, {"u", "x", "y"}, 2, shape),
                 random_family(rng, 1, 2, 2, -3, 3)};
    auto ea = eval_family_expr(a, w);
    auto eb = eval_family_expr(b, w);
    std::set<Tuple> sa(ea.begin(), ea.end()), sb(eb.begin(), eb.end());

    FamilyExpr ca = family_boolean(BooleanOp::Complement, a);
    auto eca = eval_family_expr(ca, w);
    std::set<Tuple> sca(eca.begin(), eca.end());
    for (std::int64_t x = -8; x <= 8; ++x)
      for (std::int64_t y = -8; y <= 8; ++y) CHECK(sca.count({x, y}) != sa.count({x, y}));
    CHECK(eval_family_expr(family_boolean(BooleanOp::Complement, ca), w) == ea);

    auto eab = eval_family_expr(family_boolean(BooleanOp::Intersect, a, &b), w);
    std::vector<Tuple> expect;
    for (const auto& p : ea)
      if (sb.count(p)) expect.push_back(p);
    CHECK(eab == expect);
  }
}

TEST_CASE("technical union: examples") {
  WeakCell c1({"u", "x"}, "t", Formula::truth(true), fn({"u", "x"}, v("u")), std::nullopt, 0, 1);
  WeakCell c2({"u", "x"}, "t", Formula::truth(true), std::nullopt, fn({"u", "x"}, v("x")), 0, 2);
  auto groups = technical_union_decompose({c1, c2}, 1, family1({}));
  for (const auto& g : groups) CHECK(eval_family_expr(g, {{-3, 3}, {-3, 3}}).empty());
  groups = technical_union_decompose({c1, c2}, 1, family1({{4}}));
  CHECK(groups[2].family.size() == 0);
  CHECK(eval_family_expr(groups[2], {{-3, 3}, {-3, 3}}).empty());
  CHECK_THROWS_AS(technical_union_decompose({c1}, 1, family1({{4}})), DomainError);
}

TEST_CASE("technical union: identity holds pointwise") {
  Rng rng(31);
  Window w{{-10, 10}, {-10, 10}};
  for (int trial = 0; trial < 25; ++trial) {
    int count = trial == 0 ? 2 : static_cast<int>(testing::uniform(rng, 2, 3));
    std::vector<TestCell> tc;
    std::vector<WeakCell> cells;
    for (int i = 0; i < count; ++i) {
      tc.push_back(testing::random_test_cell(rng, 3));
      cells.push_back(tc.back().build({"u", "x"}, "t"));
    }
    FiberFamily fam = trial == 0 ? family1({{1, 2}}) : random_family(rng, 1, 2, 3, -4, 4);
    auto groups = technical_union_decompose(cells, 1, fam);
    std::set<Tuple> rhs;
    for (const auto& g : groups)
      for (auto& p : eval_family_expr(g, w)) rhs.insert(p);

    std::set<Tuple> lhs;
    for (std::int64_t x = w[0].first; x <= w[0].second; ++x)
      for (std::int64_t t = w[1].first; t <= w[1].second; ++t)
        for (const auto& set : fam.members) {
          bool all = true;
          for (const auto& u : set) {
            std::int64_t p[3] = {u[0], x, t};
            bool any = false;
            for (const auto& c : tc) any = any || c.contains(p);
            all = all && any;
          }
          if (all) {
            lhs.insert({x, t});
            break;
          }
        }
    INFO("trial " << trial);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("project_s: examples") {
  std::vector<std::string> ux{"u", "x"};
  // type (ii): u + x <= t
  WeakCell ii(ux, "t", Formula::truth(true), fn(ux, v("u") + v("x")), std::nullopt, 0, 1);
  FamilyExpr e2{{"u"}, {"x", "t"}, ii, family1({{1, 2}})};
  CHECK(eval_family_expr(project_s(e2), {{-10, 10}}) == range1(-10, 10));

  WeakCell iv(ux, "t", Formula::truth(true), fn(ux, v("u")), fn(ux, v("x")), 0, 1);
  FamilyExpr e4{{"u"}, {"x", "t"}, iv, family1({{1, 3}})};
  CHECK(eval_family_expr(project_s(e4), {{-5, 10}}) == range1(3, 10));

  WeakCell even(ux, "t", Formula::truth(true), fn(ux, v("u")), fn(ux, v("x")), 0, 2);
  FamilyExpr ee{{"u"}, {"x", "t"}, even, family1({{1, 3}})};
  FamilyExpr pe = project_s(ee);
  CHECK(pe.fiber_vars.size() == 3);
  CHECK(pe.family.size() == 4);
  CHECK(eval_family_expr(pe, {{-5, 10}}) == range1(4, 10));

  // an index with empty intersection is dropped
  WeakCell pin(ux, "t", Formula::eq(v("u"), v("x")), std::nullopt, std::nullopt, 0, 1);
  FamilyExpr ep{{"u"}, {"x", "t"}, pin, family1({{1, 2}, {3}})};
  FamilyExpr pp = project_s(ep);
  CHECK(pp.family.size() == 1);
  CHECK(eval_family_expr(pp, {{-5, 5}}) == std::vector<Tuple>{{3}});

  CHECK_THROWS_AS(project_s(u_le_x({{1}})), DomainError);
}

TEST_CASE("psi") {
  for (std::int64_t a = -6; a <= 6; ++a)
    for (std::int64_t b = -6; b <= 6; ++b)
      for (std::int64_t n = 1; n <= 4; ++n)
        for (std::int64_t r = 0; r < n; ++r) {
          bool expect = false;
          for (std::int64_t y = a; y <= b; ++y) expect = expect || ((y - r) % n + n) % n == 0;
          CHECK(eval_formula(psi(k(a), k(b), r, n), {}) == expect);
        }
}

TEST_CASE("project_s: random instances match the window closure") {
  Rng rng(5150);
  Window xw{{-10, 10}};
  for (int trial = 0; trial < 40; ++trial) {
    TestCell tc = testing::random_test_cell(rng, 3, 2, 3);
    FiberFamily fam = random_family(rng, 1, 2, 3, -4, 6);
    FamilyExpr e{{"u"}, {"x", "t"}, tc.build({"u", "x"}, "t"), fam};

    // t range from the bound values on the window
    std::int64_t lo = 0, hi = 0;
    bool seen = false;
    for (const auto& set : fam.members)
      for (const auto& u : set)
        for (std::int64_t x = xw[0].first; x <= xw[0].second; ++x) {
          std::int64_t p[2] = {u[0], x};
          for (const auto* b : {&tc.lower, &tc.upper}) {
            if (!*b) continue;
            std::int64_t val = (*b)->at(p);
            lo = seen ? std::min(lo, val) : val;
            hi = seen ? std::max(hi, val) : val;
            seen = true;
          }
        }
    lo -= tc.modulus;
    hi += tc.modulus;
    std::set<Tuple> expect;
    for (const auto& p : direct_eval(tc, fam, {xw[0], {lo, hi}})) expect.insert({p[0]});
    auto got = eval_family_expr(project_s(e), xw);
    INFO("trial " << trial << " type " << e.cell().type());
    CHECK(std::set<Tuple>(got.begin(), got.end()) == expect);
  }
}

TEST_CASE("covering h: construction") {
  PWLinearFn f = fn({"u"}, v("u"));
  PWLinearFn h = build_covering_h(f, 2, 1, {1, 2});
  for (std::int64_t u = -5; u <= 5; ++u) {
    CHECK(h.evaluate({{"u", u}, {"e", 1}}) == u);
    CHECK(h.evaluate({{"u", u}, {"e", 2}}) == u + 1);
    CHECK(h.evaluate({{"u", u}, {"e", 4}}) == 0);
  }
  h.validate();
  CHECK_THROWS_AS(build_covering_h(f, 2, 1, {1, 1}), DomainError);
  CHECK_THROWS_AS(build_covering_h(f, 2, 1, {1}), DomainError);
  CHECK_THROWS_AS(build_covering_h(f, 1, 1, {1}, "u"), DomainError);
}

TEST_CASE("covering h: A is covered by h(E^2)") {
  // A = {t : exists u in P, u <= t <= u + 1}, P inside 2^N; runs of 1 mod 1 have length <= 2 here.
  std::vector<std::int64_t> powers{1, 2, 4, 8, 16, 32, 64};
  std::vector<std::int64_t> p{4, 16, 32};
  PWLinearFn h = build_covering_h(fn({"u"}, v("u")), 2, 1, {1, 2});
  std::set<std::int64_t> image;
  for (auto u : powers)
    for (auto e : powers) image.insert(static_cast<std::int64_t>(h.evaluate({{"u", u}, {"e", e}})));
  for (std::int64_t t = 0; t <= 64; ++t) {
    bool in_a = false;
    for (auto u : p) in_a = in_a || (u <= t && t <= u + 1);
    if (in_a) CHECK(image.count(t));
  }
}
