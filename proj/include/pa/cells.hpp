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

#ifndef PA_CELLS_HPP
#define PA_CELLS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pa/formula.hpp"
#include "pa/pwlinear.hpp"

namespace pa::cells {

/// {(x, t) : x in S, f(x) <= t <= g(x), t = k mod N}, either bound optional.
class WeakCell {
 public:
  /// `vars` names the first D-1 coordinates, `t` the last. Base and bounds
  /// may only mention `vars`. Throws DomainError otherwise or if N < 1.
  WeakCell(std::vector<std::string> vars, std::string t, Formula base,
           std::optional<PWLinearFn> lower, std::optional<PWLinearFn> upper, BigInt residue,
           BigInt modulus);
  /// Base false, N = 1, k = 0, no bounds.
  static WeakCell empty(std::vector<std::string> vars, std::string t);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& t() const { return t_; }
  /// Coordinate names, last one t.
  std::vector<std::string> all_variables() const;
  const Formula& base() const { return base_; }
  const std::optional<PWLinearFn>& lower() const { return lower_; }
  const std::optional<PWLinearFn>& upper() const { return upper_; }
  const BigInt& residue() const { return residue_; }
  const BigInt& modulus() const { return modulus_; }

  /// 1: no bounds, 2: lower only, 3: upper only, 4: both.
  int type() const;
  bool is_canonical_empty() const { return base_.is_false_constant(); }

  /// Quantifier-free membership formula over all_variables().
  Formula to_formula() const;
  bool contains(const Assignment& point) const;
  WeakCell renamed(const std::map<std::string, std::string>& names) const;

 private:
  std::vector<std::string> vars_;
  std::string t_;
  Formula base_;
  std::optional<PWLinearFn> lower_;
  std::optional<PWLinearFn> upper_;
  BigInt residue_;
  BigInt modulus_;
};

using Tuple = std::vector<std::int64_t>;

/// Finite indexed family (P_alpha) of finite sets of m-tuples.
struct FiberFamily {
  std::size_t arity = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Tuple>> members;

  std::size_t size() const { return labels.size(); }
  /// Throws DomainError on arity or label/member count mismatches.
  void validate() const;
};

/// union over alpha of the intersection over u in P_alpha of the fibers X_u.
struct FamilyExpr {
  std::vector<std::string> fiber_vars;
  /// For a cell kernel the last entry is the cell's t.
  std::vector<std::string> point_vars;
  std::variant<Formula, WeakCell> kernel;
  FiberFamily family;

  bool has_cell_kernel() const { return std::holds_alternative<WeakCell>(kernel); }
  const WeakCell& cell() const { return std::get<WeakCell>(kernel); }
  /// Kernel as a quantifier-free formula over fiber_vars ++ point_vars.
  Formula kernel_formula() const;
  /// Throws DomainError when the kernel does not fit the declared variables.
  void validate() const;
};

/// Integer box, one closed range per point coordinate.
using Window = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// A ⋄ B for cells over Z^{m+n+1}: the first m coordinates of each are the
/// private ones, the next n and t are shared. The result's coordinates are
/// A's first m, B's first m (renamed apart if needed), then A's shared
/// coordinates and A's t.
WeakCell diamond_cells(const WeakCell& a, const WeakCell& b, std::size_t m);

/// The three groups whose union equals the expression with kernel
/// C_1 ∪ ... ∪ C_{k+1}: (C_1..C_k, family), (C_{k+1}, family) and
/// (∪ C_i ⋄ C_{k+1}, ordered two-block partitions of each P_alpha).
std::array<FamilyExpr, 3> technical_union_decompose(const std::vector<WeakCell>& cells,
                                                    std::size_t m, const FiberFamily& family);

/// Pairwise disjoint weak cells whose union is the set defined by X over
/// `vars` (the last one plays t). Quantifiers are eliminated first.
std::vector<WeakCell> decompose_to_weak_cells(const Formula& x, const std::vector<std::string>& vars);

/// Points of the window in the expression, in lexicographic order.
std::vector<Tuple> eval_family_expr(const FamilyExpr& e, const Window& window);

enum class BooleanOp { Complement, Intersect };

/// Complement (choice functions over the product of the P_alpha, refused
/// above `product_cap` with LimitError) or intersection (kernel X ⋄ Y over
/// the product family).
FamilyExpr family_boolean(BooleanOp op, const FamilyExpr& a, const FamilyExpr* b = nullptr,
                          std::uint64_t product_cap = 1000000);

/// psi_{k,N}(a, b): some y with a <= y <= b and y = k mod N.
Formula psi(const Term& a, const Term& b, const BigInt& k, const BigInt& n);

/// Projection of an expression with a weak-cell kernel along t, as an
/// expression with a formula kernel. Indices whose intersection is empty
/// are dropped first.
FamilyExpr project_s(const FamilyExpr& e);

/// h(x, e_j) = f(x) + j for j < l N, h(x, e) = 0 otherwise. The new
/// coordinate is named `e_var`. Throws DomainError on duplicate points or
/// a wrong number of them.
PWLinearFn build_covering_h(const PWLinearFn& f, std::int64_t l, std::int64_t n,
                            const std::vector<BigInt>& e_points, const std::string& e_var = "e");

}  // namespace pa::cells

#endif  // PA_CELLS_HPP
