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

#include "pa/pwlinear.hpp"

#include <algorithm>
#include <set>

#include "pa/error.hpp"
#include "pa/qe.hpp"

namespace pa {

namespace {

std::string describe(const Assignment& point) {
  std::string out = "(";
  bool first = true;
  for (const auto& [name, value] : point) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + pa::to_string(value);
  }
  return out + ")";
}

Formula closed(const Formula& f, const std::vector<std::string>& vars) {
  Formula g = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) g = Formula::exists(*it, g);
  return g;
}

}  // namespace

PWLinearFn::PWLinearFn(std::vector<std::string> vars, std::vector<LinearPiece> pieces)
    : vars_(std::move(vars)), pieces_(std::move(pieces)) {
  std::set<std::string> known(vars_.begin(), vars_.end());
  if (known.size() != vars_.size()) throw DomainError("duplicate variable in function arity");
  for (const auto& p : pieces_) {
    if (!p.guard.is_quantifier_free()) throw DomainError("piece guard must be quantifier-free");
    if (p.divisor <= 0) throw DomainError("piece divisor must be positive");
    for (const auto& v : p.guard.free_variables())
      if (!known.count(v)) throw DomainError("guard mentions unknown variable '" + v + "'");
    for (const auto& [v, c] : p.body.coefficients()) {
      (void)c;
      if (!known.count(v)) throw DomainError("body mentions unknown variable '" + v + "'");
    }
  }
}

PWLinearFn PWLinearFn::affine(std::vector<std::string> vars, Term body) {
  return PWLinearFn(std::move(vars), {{Formula::truth(true), std::move(body), 1}});
}

BigInt PWLinearFn::evaluate(const Assignment& point) const {
  for (const auto& p : pieces_)
    if (p.guard.is_true_constant() || eval_formula(p.guard, point))
      return floor_div(p.body.evaluate(point), p.divisor);
  throw DomainError("no piece covers " + describe(point));
}

void PWLinearFn::validate(const Formula& domain) const {
  std::vector<Formula> guards;
  for (const auto& p : pieces_) guards.push_back(p.guard);
  Formula uncovered = Formula::conjunction(domain, Formula::negation(Formula::any_of(guards)));
  if (auto w = qe::find_model(uncovered, vars_))
    throw DomainError("function is not total: no piece covers " + describe(*w));
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      Formula both = Formula::all_of({domain, pieces_[i].guard, pieces_[j].guard});
      if (auto w = qe::find_model(both, vars_))
        throw DomainError("pieces " + std::to_string(i) + " and " + std::to_string(j) +
                          " overlap at " + describe(*w));
    }
    if (pieces_[i].divisor != 1) {
      Formula bad = Formula::all_of(
          {domain, pieces_[i].guard,
           Formula::negation(Formula::cong(pieces_[i].body, 0, pieces_[i].divisor))});
      if (auto w = qe::find_model(bad, vars_))
        throw DomainError("piece " + std::to_string(i) + " is not integral at " + describe(*w));
    }
  }
}

Formula PWLinearFn::less_eq(const Term& t) const {
  std::vector<Formula> parts;
  for (const auto& p : pieces_)
    parts.push_back(Formula::conjunction(p.guard, Formula::less_eq(p.body, t * p.divisor)));
  return Formula::any_of(parts);
}

Formula PWLinearFn::greater_eq(const Term& t) const {
  std::vector<Formula> parts;
  for (const auto& p : pieces_)
    parts.push_back(Formula::conjunction(p.guard, Formula::less_eq(t * p.divisor, p.body)));
  return Formula::any_of(parts);
}

Formula PWLinearFn::equals(const Term& t) const {
  std::vector<Formula> parts;
  for (const auto& p : pieces_)
    parts.push_back(Formula::conjunction(p.guard, Formula::eq(p.body, t * p.divisor)));
  return Formula::any_of(parts);
}

PWLinearFn PWLinearFn::renamed(const std::map<std::string, std::string>& names) const {
  std::vector<std::string> vars;
  for (const auto& v : vars_) {
    auto it = names.find(v);
    vars.push_back(it == names.end() ? v : it->second);
  }
  std::vector<LinearPiece> pieces;
  for (const auto& p : pieces_)
    pieces.push_back({p.guard.renamed(names), p.body.renamed(names), p.divisor});
  return PWLinearFn(std::move(vars), std::move(pieces));
}

PWLinearFn PWLinearFn::widened(std::vector<std::string> vars) const {
  return PWLinearFn(std::move(vars), pieces_);
}

PWLinearFn PWLinearFn::pruned() const {
  std::vector<LinearPiece> kept;
  for (const auto& p : pieces_)
    if (qe::decide_sentence(closed(p.guard, vars_))) kept.push_back(p);
  return PWLinearFn(vars_, std::move(kept));
}

std::string PWLinearFn::to_string() const {
  std::string out;
  for (const auto& p : pieces_) {
    if (!out.empty()) out += "; ";
    out += "[" + p.guard.to_string() + "] ";
    out += p.divisor == 1 ? p.body.to_string()
                          : "(" + p.body.to_string() + ") / " + pa::to_string(p.divisor);
  }
  return out;
}

namespace {

PWLinearFn extremum(const PWLinearFn& a, const PWLinearFn& b, bool take_max) {
  if (a.variables() != b.variables()) throw DomainError("functions have different arities");
  std::vector<LinearPiece> pieces;
  for (const auto& p : a.pieces()) {
    for (const auto& q : b.pieces()) {
      Term lhs = p.body * q.divisor;  // compare p/dp with q/dq
      Term rhs = q.body * p.divisor;
      Formula p_wins = take_max ? Formula::less_eq(rhs, lhs) : Formula::less_eq(lhs, rhs);
      Formula guard = Formula::conjunction(p.guard, q.guard);
      pieces.push_back({Formula::conjunction(guard, p_wins), p.body, p.divisor});
      pieces.push_back({Formula::conjunction(guard, Formula::negation(p_wins)), q.body, q.divisor});
    }
  }
  return PWLinearFn(a.variables(), std::move(pieces)).pruned();
}

}  // namespace

PWLinearFn pw_max(const PWLinearFn& a, const PWLinearFn& b) { return extremum(a, b, true); }
PWLinearFn pw_min(const PWLinearFn& a, const PWLinearFn& b) { return extremum(a, b, false); }

}  // namespace pa
