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

#include "pa/nnf.hpp"

#include <functional>
#include <unordered_map>

#include "pa/error.hpp"

namespace pa::nnf {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_big(const BigInt& x) {
  static const BigInt kPrime(2305843009213693951ULL);  // 2^61 - 1
  BigInt r = x % kPrime;
  return static_cast<std::size_t>(r.convert_to<long long>());
}

std::size_t hash_term(const Term& t) {
  std::size_t h = hash_big(t.constant());
  for (const auto& [name, c] : t.coefficients())
    h = mix(mix(h, std::hash<std::string>{}(name)), hash_big(c));
  return h;
}

// Coefficient reduction into (-n/2, n/2].
BigInt reduce_symmetric(const BigInt& c, const BigInt& n) {
  BigInt r = mod_floor(c, n);
  if (2 * r > n) r -= n;
  return r;
}

}  // namespace

Nnf Nnf::constant(bool value) {
  Nnf f;
  f.kind_ = value ? Kind::True : Kind::False;
  f.rehash();
  return f;
}

Nnf Nnf::literal(Literal lit) {
  Term& t = lit.term;
  if (lit.kind == Literal::Kind::Lt) {
    if (t.is_constant()) return constant(t.constant() < 0);
    BigInt g = 0;
    for (const auto& [name, c] : t.coefficients()) g = gcd(g, c);
    if (g > 1) {
      // sum(a x) + c < 0  <=>  sum(a/g x) <= floor((-c-1)/g)
      BigInt bound = floor_div(-t.constant() - 1, g);
      Term scaled(-bound - 1);
      for (const auto& [name, c] : t.coefficients()) scaled += Term::variable(name, c / g);
      t = scaled;
    }
  } else {
    if (lit.modulus <= 0) throw DomainError("modulus must be positive");
    bool positive = lit.kind == Literal::Kind::Dvd;
    BigInt n = lit.modulus;
    Term reduced(mod_floor(t.constant(), n));
    for (const auto& [name, c] : t.coefficients())
      reduced += Term::variable(name, reduce_symmetric(c, n));
    if (reduced.is_constant()) return constant((reduced.constant() == 0) == positive);
    BigInt g = n;
    for (const auto& [name, c] : reduced.coefficients()) g = gcd(g, c);
    if (reduced.constant() % g != 0) return constant(!positive);
    if (g > 1) {
      n /= g;
      Term divided(reduced.constant() / g);
      for (const auto& [name, c] : reduced.coefficients())
        divided += Term::variable(name, c / g);
      reduced = divided;
    }
    if (n == 1) return constant(positive);
    if (reduced.coefficients().begin()->second < 0) reduced = -reduced;
    Term canon(mod_floor(reduced.constant(), n));
    for (const auto& [name, c] : reduced.coefficients())
      canon += Term::variable(name, reduce_symmetric(c, n));
    t = canon;
    lit.modulus = n;
  }
  Nnf f;
  f.kind_ = Kind::Lit;
  f.lit_ = std::move(lit);
  f.rehash();
  return f;
}

Nnf Nnf::conjunction(std::vector<Nnf> parts) { return junction(Kind::And, std::move(parts)); }

Nnf Nnf::disjunction(std::vector<Nnf> parts) { return junction(Kind::Or, std::move(parts)); }

Nnf Nnf::junction(Kind kind, std::vector<Nnf> parts) {
  // `absorbing` short-circuits the whole junction, `neutral` is dropped.
  const Kind absorbing = kind == Kind::And ? Kind::False : Kind::True;
  const Kind neutral = kind == Kind::And ? Kind::True : Kind::False;
  std::vector<Nnf> flat;
  for (auto& p : parts) {
    if (p.kind_ == absorbing) return constant(absorbing == Kind::True);
    if (p.kind_ == neutral) continue;
    if (p.kind_ == kind) {
      for (auto& q : p.parts_) flat.push_back(std::move(q));
    } else {
      flat.push_back(std::move(p));
    }
  }
  std::unordered_multimap<std::size_t, std::size_t> seen;
  std::vector<Nnf> kept;
  auto contains = [&](const Nnf& q) {
    auto range = seen.equal_range(q.hash_);
    for (auto it = range.first; it != range.second; ++it)
      if (kept[it->second] == q) return true;
    return false;
  };
  for (auto& p : flat) {
    if (contains(p)) continue;
    if (p.kind_ == Kind::Lit && contains(negate(p)))
      return constant(absorbing == Kind::True);
    seen.emplace(p.hash_, kept.size());
    kept.push_back(std::move(p));
  }
  if (kept.empty()) return constant(neutral == Kind::True);
  if (kept.size() == 1) return std::move(kept.front());
  Nnf f;
  f.kind_ = kind;
  f.parts_ = std::move(kept);
  f.rehash();
  return f;
}

void Nnf::rehash() {
  std::size_t h = static_cast<std::size_t>(kind_) * 31 + 7;
  if (kind_ == Kind::Lit) {
    h = mix(h, static_cast<std::size_t>(lit_.kind));
    h = mix(h, hash_big(lit_.modulus));
    h = mix(h, hash_term(lit_.term));
  }
  for (const auto& p : parts_) h = mix(h, p.hash_);
  hash_ = h;
}

bool Nnf::mentions(const std::string& var) const {
  if (kind_ == Kind::Lit) return lit_.term.mentions(var);
  for (const auto& p : parts_)
    if (p.mentions(var)) return true;
  return false;
}

bool operator==(const Nnf& a, const Nnf& b) {
  if (a.hash_ != b.hash_ || a.kind_ != b.kind_) return false;
  if (a.kind_ == Nnf::Kind::Lit) return a.lit_ == b.lit_;
  return a.parts_ == b.parts_;
}

namespace {

Nnf atom_to_nnf(const Formula& f, bool negated) {
  using K = Literal::Kind;
  Term d = f.lhs() - f.rhs();
  switch (f.kind()) {
    case FormulaKind::Less:
      // a < b ; negation b <= a
      return negated ? Nnf::literal({K::Lt, -d - Term(1), 0}) : Nnf::literal({K::Lt, d, 0});
    case FormulaKind::LessEq:
      return negated ? Nnf::literal({K::Lt, -d, 0}) : Nnf::literal({K::Lt, d - Term(1), 0});
    case FormulaKind::Eq: {
      if (negated)
        return Nnf::disjunction({Nnf::literal({K::Lt, d, 0}), Nnf::literal({K::Lt, -d, 0})});
      return Nnf::conjunction(
          {Nnf::literal({K::Lt, d - Term(1), 0}), Nnf::literal({K::Lt, -d - Term(1), 0})});
    }
    default: {
      Term t = f.cong_term() - Term(f.residue());
      return Nnf::literal({negated ? K::NDvd : K::Dvd, t, f.modulus()});
    }
  }
}

Nnf to_nnf(const Formula& f, bool negated) {
  if (f.is_atom()) return atom_to_nnf(f, negated);
  switch (f.kind()) {
    case FormulaKind::Not:
      return to_nnf(f.left(), !negated);
    case FormulaKind::And:
    case FormulaKind::Or: {
      bool conj = (f.kind() == FormulaKind::And) != negated;
      std::vector<Nnf> parts{to_nnf(f.left(), negated), to_nnf(f.right(), negated)};
      return conj ? Nnf::conjunction(std::move(parts)) : Nnf::disjunction(std::move(parts));
    }
    case FormulaKind::Implies: {
      // a -> b == !a | b ; negation a & !b
      if (negated)
        return Nnf::conjunction({to_nnf(f.left(), false), to_nnf(f.right(), true)});
      return Nnf::disjunction({to_nnf(f.left(), true), to_nnf(f.right(), false)});
    }
    default:
      throw DomainError("expected a quantifier-free formula");
  }
}

}  // namespace

Nnf from_formula(const Formula& qf) { return to_nnf(qf, false); }

Formula to_formula(const Nnf& f) {
  switch (f.kind()) {
    case Nnf::Kind::True:
      return Formula::truth(true);
    case Nnf::Kind::False:
      return Formula::truth(false);
    case Nnf::Kind::Lit: {
      const Literal& lit = f.lit();
      Term vars = lit.term.without_constant();
      if (lit.kind == Literal::Kind::Lt) {
        // vars + c < 0  <=>  vars <= -c - 1
        BigInt bound = -lit.term.constant() - 1;
        if (!vars.is_constant() && vars.coefficients().begin()->second < 0)
          return Formula::less_eq(Term(-bound), -vars);
        return Formula::less_eq(vars, Term(bound));
      }
      Formula c = Formula::cong(vars, -lit.term.constant(), lit.modulus);
      return lit.kind == Literal::Kind::Dvd ? c : Formula::negation(c);
    }
    case Nnf::Kind::And:
    case Nnf::Kind::Or: {
      std::vector<Formula> parts;
      for (const auto& p : f.parts()) parts.push_back(to_formula(p));
      return f.kind() == Nnf::Kind::And ? Formula::all_of(parts) : Formula::any_of(parts);
    }
  }
  return Formula::truth(false);
}

Nnf negate(const Nnf& f) {
  using K = Literal::Kind;
  switch (f.kind()) {
    case Nnf::Kind::True:
      return Nnf::constant(false);
    case Nnf::Kind::False:
      return Nnf::constant(true);
    case Nnf::Kind::Lit: {
      const Literal& lit = f.lit();
      if (lit.kind == K::Lt) return Nnf::literal({K::Lt, -lit.term - Term(1), 0});
      return Nnf::literal({lit.kind == K::Dvd ? K::NDvd : K::Dvd, lit.term, lit.modulus});
    }
    case Nnf::Kind::And:
    case Nnf::Kind::Or: {
      std::vector<Nnf> parts;
      parts.reserve(f.parts().size());
      for (const auto& p : f.parts()) parts.push_back(negate(p));
      return f.kind() == Nnf::Kind::And ? Nnf::disjunction(std::move(parts))
                                        : Nnf::conjunction(std::move(parts));
    }
  }
  return f;
}

Nnf substitute(const Nnf& f, const std::string& var, const Term& value) {
  if (!f.mentions(var)) return f;
  return map_literals(f, [&](const Literal& lit) {
    if (!lit.term.mentions(var)) return Nnf::literal(lit);
    return Nnf::literal({lit.kind, lit.term.substitute(var, value), lit.modulus});
  });
}

bool evaluate(const Nnf& f, const Assignment& assignment) {
  switch (f.kind()) {
    case Nnf::Kind::True:
      return true;
    case Nnf::Kind::False:
      return false;
    case Nnf::Kind::Lit: {
      BigInt v = f.lit().term.evaluate(assignment);
      switch (f.lit().kind) {
        case Literal::Kind::Lt:
          return v < 0;
        case Literal::Kind::Dvd:
          return mod_floor(v, f.lit().modulus) == 0;
        case Literal::Kind::NDvd:
          return mod_floor(v, f.lit().modulus) != 0;
      }
      return false;
    }
    case Nnf::Kind::And:
      for (const auto& p : f.parts())
        if (!evaluate(p, assignment)) return false;
      return true;
    case Nnf::Kind::Or:
      for (const auto& p : f.parts())
        if (evaluate(p, assignment)) return true;
      return false;
  }
  return false;
}

}  // namespace pa::nnf
