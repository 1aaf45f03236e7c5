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

#ifndef PA_FORMULA_HPP
#define PA_FORMULA_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pa/bigint.hpp"

namespace pa {

/// Values for free variables.
using Assignment = std::map<std::string, BigInt, std::less<>>;

/// An affine form sum(c_v * v) + c over named integer variables. Zero
/// coefficients are never stored, so structural equality is semantic
/// equality.
class Term {
 public:
  Term() = default;
  explicit Term(BigInt constant) : constant_(std::move(constant)) {}
  static Term variable(const std::string& name, const BigInt& coefficient = 1);

  const std::map<std::string, BigInt>& coefficients() const { return coeffs_; }
  const BigInt& constant() const { return constant_; }
  BigInt coefficient(const std::string& name) const;
  bool is_constant() const { return coeffs_.empty(); }
  bool mentions(const std::string& name) const { return coeffs_.count(name) != 0; }

  Term operator+(const Term& other) const;
  Term operator-(const Term& other) const;
  Term operator-() const;
  Term operator*(const BigInt& factor) const;
  Term& operator+=(const Term& other);

  Term without_constant() const;
  /// This term with `name` dropped, i.e. the part not involving it.
  Term without(const std::string& name) const;
  Term substitute(const std::string& name, const Term& value) const;
  Term renamed(const std::map<std::string, std::string>& names) const;

  /// Throws DomainError on an unbound variable.
  BigInt evaluate(const Assignment& assignment) const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const Term& a, const Term& b);

 private:
  void add(const std::string& name, const BigInt& coefficient);

  std::map<std::string, BigInt> coeffs_;
  BigInt constant_;
};

enum class FormulaKind {
  Less,
  LessEq,
  Eq,
  Cong,
  Not,
  And,
  Or,
  Implies,
  Exists,
  Forall,
};

/// Immutable Presburger formula over (Z, <, +) with congruence atoms.
///
/// A congruence atom Cong(t, k, N) means t == k (mod N); it is stored with
/// the constant part of t folded into k, 0 <= k < N and N >= 1. The truth
/// constants are the atoms `0 = 0` and `0 < 0`.
class Formula {
 public:
  static Formula less(Term lhs, Term rhs);
  static Formula less_eq(Term lhs, Term rhs);
  static Formula eq(Term lhs, Term rhs);
  static Formula cong(const Term& term, const BigInt& residue, const BigInt& modulus);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula implication(Formula left, Formula right);
  static Formula exists(std::string variable, Formula body);
  static Formula forall(std::string variable, Formula body);

  static Formula truth(bool value);
  /// Left-nested conjunction; `0 = 0` when empty.
  static Formula all_of(const std::vector<Formula>& parts);
  /// Left-nested disjunction; `0 < 0` when empty.
  static Formula any_of(const std::vector<Formula>& parts);

  FormulaKind kind() const;
  bool is_atom() const;
  bool is_quantifier() const;
  bool is_quantifier_free() const;
  /// Variable-free atom that is always true / always false.
  bool is_true_constant() const;
  bool is_false_constant() const;

  const Term& lhs() const;
  const Term& rhs() const;
  /// Cong atoms: the variable part, residue and modulus.
  const Term& cong_term() const { return lhs(); }
  const BigInt& residue() const;
  const BigInt& modulus() const;
  /// Operand of Not, left child of a binary node, or body of a quantifier.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }
  const std::string& variable() const;

  std::set<std::string> free_variables() const;
  std::set<std::string> all_variables() const;

  /// Substitution of a free variable; clashing binders are renamed.
  Formula substitute(const std::string& name, const Term& value) const;
  /// Rename free variables.
  Formula renamed(const std::map<std::string, std::string>& names) const;
  /// Substitute every assigned free variable by its value.
  Formula instantiate(const Assignment& assignment) const;

  /// Text in the grammar accepted by parse_formula.
  std::string to_string() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the ASCII grammar
///
///   term    := INT | VAR | term "+" term | term "-" term | INT "*" VAR | "-" term
///   atom    := term ("<"|"<="|"="|">"|">=") term | term "===" term "mod" INT
///   formula := atom | "!" formula | formula "&" formula | formula "|" formula
///            | formula "->" formula | "exists" VAR "." formula
///            | "forall" VAR "." formula | "(" formula ")"
///
/// with precedence ! > & > | > -> (the arrow associates to the right) and
/// quantifier bodies extending as far right as possible. `a > b` and `a >= b`
/// are read as `b < a` and `b <= a`. Bound variables that clash with a free
/// variable or an enclosing binder are renamed apart. Throws SyntaxError.
Formula parse_formula(std::string_view text);

/// An affine term in the same grammar. Throws SyntaxError.
Term parse_term(std::string_view text);

/// Truth of `f` in Z under `assignment`, which must bind every free variable
/// (DomainError otherwise). Quantified subformulas are decided by quantifier
/// elimination.
bool eval_formula(const Formula& f, const Assignment& assignment);

}  // namespace pa

#endif  // PA_FORMULA_HPP
