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

#ifndef PA_PWLINEAR_HPP
#define PA_PWLINEAR_HPP

#include <map>
#include <string>
#include <vector>

#include "pa/formula.hpp"

namespace pa {

/// On points satisfying `guard` the function equals body / divisor, which is
/// an integer there.
struct LinearPiece {
  Formula guard;
  Term body;
  BigInt divisor = 1;
};

/// Piecewise-affine integer function on Z^m given by guarded affine pieces.
class PWLinearFn {
 public:
  /// Throws DomainError on a guard or body mentioning a variable outside
  /// `vars`, a quantified guard, or a nonpositive divisor.
  PWLinearFn(std::vector<std::string> vars, std::vector<LinearPiece> pieces);
  static PWLinearFn affine(std::vector<std::string> vars, Term body);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const std::vector<LinearPiece>& pieces() const { return pieces_; }

  /// Value from the first piece whose guard holds; DomainError if none does.
  BigInt evaluate(const Assignment& point) const;

  /// Checks that the guards are pairwise disjoint and cover `domain`, and
  /// that every body is divisible by its divisor on its guard. Throws
  /// DomainError with a witness point otherwise.
  void validate(const Formula& domain) const;
  void validate() const { validate(Formula::truth(true)); }

  /// Quantifier-free formulas for f(x) <= t, f(x) >= t, f(x) = t, where t
  /// may mention variables of its own. Correct on points where exactly one
  /// guard holds.
  Formula less_eq(const Term& t) const;
  Formula greater_eq(const Term& t) const;
  Formula equals(const Term& t) const;

  /// Renames the variables (and their occurrences).
  PWLinearFn renamed(const std::map<std::string, std::string>& names) const;
  /// Same function, read over a larger variable list.
  PWLinearFn widened(std::vector<std::string> vars) const;
  /// Pieces whose guard is unsatisfiable are removed.
  PWLinearFn pruned() const;

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  std::vector<LinearPiece> pieces_;
};

/// Pointwise max / min, by refining the guards with comparison atoms.
PWLinearFn pw_max(const PWLinearFn& a, const PWLinearFn& b);
PWLinearFn pw_min(const PWLinearFn& a, const PWLinearFn& b);

}  // namespace pa

#endif  // PA_PWLINEAR_HPP
