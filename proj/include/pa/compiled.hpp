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

#ifndef PA_COMPILED_HPP
#define PA_COMPILED_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pa/formula.hpp"

namespace pa {

/// Affine term with machine-word coefficients over a fixed variable order.
class CompiledTerm {
 public:
  CompiledTerm() = default;
  /// Throws DomainError if `t` mentions a variable outside `vars`, LimitError
  /// if a coefficient does not fit in 64 bits.
  CompiledTerm(const Term& t, const std::vector<std::string>& vars);

  /// Throws LimitError on overflow.
  std::int64_t operator()(const std::int64_t* point) const;
  __int128 wide(const std::int64_t* point) const;

 private:
  std::vector<std::pair<int, std::int64_t>> coeffs_;
  std::int64_t constant_ = 0;
};

/// Quantifier-free formula compiled for repeated evaluation on int64 points.
class CompiledFormula {
 public:
  CompiledFormula() = default;
  CompiledFormula(const Formula& qf, const std::vector<std::string>& vars);

  bool operator()(const std::int64_t* point) const { return eval(root_, point); }
  bool operator()(const std::vector<std::int64_t>& point) const { return eval(root_, point.data()); }
  std::size_t arity() const { return arity_; }

 private:
  struct Node {
    FormulaKind kind;
    CompiledTerm term;
    std::int64_t residue = 0;
    std::int64_t modulus = 1;
    int a = -1;
    int b = -1;
  };
  int compile(const Formula& f, const std::vector<std::string>& vars);
  bool eval(int node, const std::int64_t* point) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t arity_ = 0;
};

}  // namespace pa

#endif  // PA_COMPILED_HPP
