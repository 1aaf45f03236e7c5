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

#include "pa/qe.hpp"

#include <set>
#include <vector>

#include "pa/error.hpp"
#include "pa/nnf.hpp"

namespace pa::qe {

using nnf::Literal;
using nnf::Nnf;

namespace {

void collect_literals(const Nnf& f, const std::string& x, std::vector<Literal>& out) {
  if (f.kind() == Nnf::Kind::Lit) {
    if (f.lit().term.mentions(x)) out.push_back(f.lit());
    return;
  }
  for (const auto& p : f.parts()) collect_literals(p, x, out);
}

// Exists x. f for f a conjunction (or literal) in which every part mentions x.
Nnf eliminate_core(const std::string& x, const Nnf& f) {
  std::vector<Literal> lits;
  collect_literals(f, x, lits);

  // Scale every literal so that x occurs with coefficient +-l, then read l*x
  // as a fresh x constrained by l | x.
  BigInt l = 1;
  for (const auto& lit : lits) l = lcm(l, lit.term.coefficient(x));
  Nnf scaled = nnf::map_literals(f, [&](const Literal& lit) {
    BigInt a = lit.term.coefficient(x);
    if (a == 0) return Nnf::literal(lit);
    BigInt m = l / abs(a);
    Term rest = lit.term.without(x) * m;
    Term t = rest + Term::variable(x, a > 0 ? 1 : -1);
    BigInt modulus = lit.kind == Literal::Kind::Lt ? BigInt(0) : lit.modulus * m;
    return Nnf::literal({lit.kind, t, modulus});
  });
  if (l > 1)
    scaled = Nnf::conjunction(
        {scaled, Nnf::literal({Literal::Kind::Dvd, Term::variable(x), l})});

  lits.clear();
  collect_literals(scaled, x, lits);
  BigInt period = 1;
  std::vector<Term> lower, upper;  // x > b  and  x < a
  std::set<Term> seen_lower, seen_upper;
  for (const auto& lit : lits) {
    if (lit.kind != Literal::Kind::Lt) {
      period = lcm(period, lit.modulus);
      continue;
    }
    BigInt a = lit.term.coefficient(x);
    Term rest = lit.term.without(x);
    if (a > 0) {
      Term bound = -rest;  // x + rest < 0  <=>  x < -rest
      if (seen_upper.insert(bound).second) upper.push_back(bound);
    } else {
      if (seen_lower.insert(rest).second) lower.push_back(rest);  // x > rest
    }
  }

  // Left disjunct (-infinity with lower bounds) unless the upper-bound set is
  // strictly smaller.
  const bool use_lower = lower.size() <= upper.size();
  Nnf at_infinity = nnf::map_literals(scaled, [&](const Literal& lit) {
    if (lit.kind != Literal::Kind::Lt || !lit.term.mentions(x)) return Nnf::literal(lit);
    bool upper_bound = lit.term.coefficient(x) > 0;
    return Nnf::constant(upper_bound == use_lower);
  });

  std::vector<Nnf> disjuncts;
  for (BigInt j = 1; j <= period; ++j) {
    Nnf d = nnf::substitute(at_infinity, x, Term(use_lower ? j : BigInt(-j)));
    if (d.is_true()) return d;
    disjuncts.push_back(std::move(d));
  }
  for (const Term& b : use_lower ? lower : upper) {
    for (BigInt j = 1; j <= period; ++j) {
      Term witness = use_lower ? b + Term(j) : b - Term(j);
      Nnf d = nnf::substitute(scaled, x, witness);
      if (d.is_true()) return d;
      disjuncts.push_back(std::move(d));
    }
  }
  return Nnf::disjunction(std::move(disjuncts));
}

Nnf eliminate(const std::string& x, const Nnf& f) {
  if (!f.mentions(x)) return f;
  if (f.kind() == Nnf::Kind::Or) {
    std::vector<Nnf> parts;
    for (const auto& p : f.parts()) {
      Nnf e = eliminate(x, p);
      if (e.is_true()) return e;
      parts.push_back(std::move(e));
    }
    return Nnf::disjunction(std::move(parts));
  }
  if (f.kind() == Nnf::Kind::And) {
    std::vector<Nnf> free, bound;
    for (const auto& p : f.parts()) (p.mentions(x) ? bound : free).push_back(p);
    if (!free.empty()) {
      free.push_back(eliminate_core(x, Nnf::conjunction(std::move(bound))));
      return Nnf::conjunction(std::move(free));
    }
  }
  return eliminate_core(x, f);
}

Nnf eliminate_all(const Formula& f) {
  if (f.is_atom()) return nnf::from_formula(f);
  switch (f.kind()) {
    case FormulaKind::Not:
      return nnf::negate(eliminate_all(f.left()));
    case FormulaKind::And:
      return Nnf::conjunction({eliminate_all(f.left()), eliminate_all(f.right())});
    case FormulaKind::Or:
      return Nnf::disjunction({eliminate_all(f.left()), eliminate_all(f.right())});
    case FormulaKind::Implies:
      return Nnf::disjunction(
          {nnf::negate(eliminate_all(f.left())), eliminate_all(f.right())});
    case FormulaKind::Exists:
      return eliminate(f.variable(), eliminate_all(f.body()));
    case FormulaKind::Forall:
      // forall x. b  ==  !exists x. !b
      return nnf::negate(eliminate(f.variable(), nnf::negate(eliminate_all(f.body()))));
    default:
      break;
  }
  throw DomainError("unknown formula node");
}

}  // namespace

Formula cooper_eliminate(const Formula& f) { return nnf::to_formula(eliminate_all(f)); }

bool decide_sentence(const Formula& f) {
  auto free = f.free_variables();
  if (!free.empty())
    throw DomainError("sentence has free variable '" + *free.begin() + "'");
  Nnf result = eliminate_all(f);
  if (result.is_true()) return true;
  if (result.is_false()) return false;
  return nnf::evaluate(result, {});
}

Formula simplify(const Formula& qf) { return nnf::to_formula(nnf::from_formula(qf)); }

namespace {

void collect_scale(const Formula& f, BigInt& period, BigInt& bound) {
  switch (f.kind()) {
    case FormulaKind::Less:
    case FormulaKind::LessEq:
    case FormulaKind::Eq:
      bound = std::max(bound, BigInt(abs((f.lhs() - f.rhs()).constant())));
      return;
    case FormulaKind::Cong:
      period = lcm(period, f.modulus());
      bound = std::max(bound, BigInt(abs(f.cong_term().constant())));
      return;
    case FormulaKind::Not:
      collect_scale(f.left(), period, bound);
      return;
    default:
      collect_scale(f.left(), period, bound);
      collect_scale(f.right(), period, bound);
      return;
  }
}

}  // namespace

std::optional<Assignment> find_model(const Formula& f, const std::vector<std::string>& vars) {
  Formula closed = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) closed = Formula::exists(*it, closed);
  if (!decide_sentence(closed)) return std::nullopt;
  Assignment model;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Formula rest = f.instantiate(model);
    for (std::size_t j = vars.size(); j-- > i + 1;) rest = Formula::exists(vars[j], rest);
    Nnf one = eliminate_all(rest);
    Formula qf = nnf::to_formula(one);
    BigInt period = 1, bound = 0;
    collect_scale(qf, period, bound);
    bound += period + 1;
    bool found = false;
    for (BigInt step = 0; step <= bound && !found; ++step) {
      for (int sign : {1, -1}) {
        if (step == 0 && sign < 0) continue;
        BigInt v = step * sign;
        if (nnf::evaluate(one, {{vars[i], v}})) {
          model[vars[i]] = v;
          found = true;
          break;
        }
      }
    }
    if (!found) throw Error("model search failed for '" + vars[i] + "'");
  }
  return model;
}

}  // namespace pa::qe
