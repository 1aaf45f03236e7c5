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

#include "pa/compiled.hpp"

#include <algorithm>

#include "pa/error.hpp"

namespace pa {

CompiledTerm::CompiledTerm(const Term& t, const std::vector<std::string>& vars)
    : constant_(to_int64(t.constant())) {
  for (const auto& [name, c] : t.coefficients()) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw DomainError("unbound free variable '" + name + "'");
    coeffs_.emplace_back(static_cast<int>(it - vars.begin()), to_int64(c));
  }
}

__int128 CompiledTerm::wide(const std::int64_t* point) const {
  __int128 sum = constant_;
  for (const auto& [i, c] : coeffs_) {
    __int128 product = static_cast<__int128>(c) * point[i];
    if (__builtin_add_overflow(sum, product, &sum)) throw LimitError("term value overflow");
  }
  return sum;
}

std::int64_t CompiledTerm::operator()(const std::int64_t* point) const {
  __int128 v = wide(point);
  if (v > INT64_MAX || v < INT64_MIN) throw LimitError("term value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

CompiledFormula::CompiledFormula(const Formula& qf, const std::vector<std::string>& vars)
    : arity_(vars.size()) {
  if (!qf.is_quantifier_free()) throw DomainError("formula is not quantifier-free");
  root_ = compile(qf, vars);
}

int CompiledFormula::compile(const Formula& f, const std::vector<std::string>& vars) {
  Node node{f.kind(), {}, 0, 1, -1, -1};
  switch (f.kind()) {
    case FormulaKind::Less:
    case FormulaKind::LessEq:
    case FormulaKind::Eq:
      node.term = CompiledTerm(f.lhs() - f.rhs(), vars);
      break;
    case FormulaKind::Cong:
      node.term = CompiledTerm(f.cong_term(), vars);
      node.residue = to_int64(f.residue());
      node.modulus = to_int64(f.modulus());
      break;
    case FormulaKind::Not:
      node.a = compile(f.left(), vars);
      break;
    default:
      node.a = compile(f.left(), vars);
      node.b = compile(f.right(), vars);
      break;
  }
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

bool CompiledFormula::eval(int index, const std::int64_t* point) const {
  const Node& n = nodes_[static_cast<std::size_t>(index)];
  switch (n.kind) {
    case FormulaKind::Less:
      return n.term.wide(point) < 0;
    case FormulaKind::LessEq:
      return n.term.wide(point) <= 0;
    case FormulaKind::Eq:
      return n.term.wide(point) == 0;
    case FormulaKind::Cong: {
      __int128 r = n.term.wide(point) % n.modulus;
      if (r < 0) r += n.modulus;
      return r == n.residue;
    }
    case FormulaKind::Not:
      return !eval(n.a, point);
    case FormulaKind::And:
      return eval(n.a, point) && eval(n.b, point);
    case FormulaKind::Or:
      return eval(n.a, point) || eval(n.b, point);
    case FormulaKind::Implies:
      return !eval(n.a, point) || eval(n.b, point);
    default:
      throw DomainError("formula is not quantifier-free");
  }
}

}  // namespace pa
