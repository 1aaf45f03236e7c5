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

#ifndef PA_NNF_HPP
#define PA_NNF_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "pa/formula.hpp"

// Negation normal form over three literal shapes. This is the working
// representation of the eliminator and of cell decomposition.
namespace pa::nnf {

struct Literal {
  enum class Kind { Lt, Dvd, NDvd };
  Kind kind;
  /// Lt: term < 0.  Dvd: modulus | term.  NDvd: not (modulus | term).
  Term term;
  BigInt modulus;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.kind == b.kind && a.modulus == b.modulus && a.term == b.term;
  }
};

class Nnf {
 public:
  enum class Kind { True, False, Lit, And, Or };

  static Nnf constant(bool value);
  /// Normalizes the literal; may fold to a constant.
  static Nnf literal(Literal lit);
  /// Flattening, constant folding, duplicate and complement removal.
  static Nnf conjunction(std::vector<Nnf> parts);
  static Nnf disjunction(std::vector<Nnf> parts);

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }
  const Literal& lit() const { return lit_; }
  const std::vector<Nnf>& parts() const { return parts_; }
  std::size_t hash() const { return hash_; }
  bool mentions(const std::string& var) const;

  friend bool operator==(const Nnf& a, const Nnf& b);

 private:
  Nnf() = default;
  static Nnf junction(Kind kind, std::vector<Nnf> parts);
  void rehash();

  Kind kind_ = Kind::True;
  Literal lit_{Literal::Kind::Lt, Term(), 0};
  std::vector<Nnf> parts_;
  std::size_t hash_ = 0;
};

/// Requires a quantifier-free formula (DomainError otherwise).
Nnf from_formula(const Formula& qf);
Formula to_formula(const Nnf& f);
Nnf negate(const Nnf& f);
Nnf substitute(const Nnf& f, const std::string& var, const Term& value);
/// Literal-wise rewrite; `map` returns the replacement subformula.
template <typename Map>
Nnf map_literals(const Nnf& f, Map&& map) {
  switch (f.kind()) {
    case Nnf::Kind::True:
    case Nnf::Kind::False:
      return f;
    case Nnf::Kind::Lit:
      return map(f.lit());
    case Nnf::Kind::And:
    case Nnf::Kind::Or: {
      std::vector<Nnf> parts;
      parts.reserve(f.parts().size());
      for (const auto& p : f.parts()) parts.push_back(map_literals(p, map));
      return f.kind() == Nnf::Kind::And ? Nnf::conjunction(std::move(parts))
                                        : Nnf::disjunction(std::move(parts));
    }
  }
  return f;
}

bool evaluate(const Nnf& f, const Assignment& assignment);

}  // namespace pa::nnf

#endif  // PA_NNF_HPP
