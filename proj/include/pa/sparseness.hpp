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

#ifndef PA_SPARSENESS_HPP
#define PA_SPARSENESS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pa/density.hpp"
#include "pa/formula.hpp"
#include "pa/powers.hpp"
#include "pa/semilinear.hpp"

namespace pa::sparseness {

/// A set of integers from one of a fixed list of sources, so that counts
/// are exact.
class MembershipSource {
 public:
  enum class Kind { Semilinear, Powers, List, Squarefree };

  static MembershipSource from_semilinear(semilinear::SemilinearSet1 set);
  /// {a^e : a a base, e >= 0}.
  static MembershipSource from_powers(const std::vector<BigInt>& bases);
  static MembershipSource from_list(std::vector<std::int64_t> members);
  /// Squarefree integers of either sign; 0 is not squarefree.
  static MembershipSource squarefree();
  /// A formula with at most one free variable, through its semilinear form.
  static MembershipSource from_formula(const Formula& f);

  /// `squarefree`, `powers:2,3`, `list:1,5,9`, `formula:<text>`, or
  /// `semilinear:<text>` (same as formula). Throws DomainError, or
  /// SyntaxError from the formula parser.
  static MembershipSource parse(std::string_view spec);

  Kind kind() const { return kind_; }
  std::string describe() const;

  bool contains(std::int64_t x) const;
  /// Membership of lo, lo+1, ..., hi.
  std::vector<std::uint8_t> window(std::int64_t lo, std::int64_t hi) const;

 private:
  MembershipSource() = default;

  Kind kind_ = Kind::List;
  std::string text_;
  semilinear::SemilinearSet1 set_ = semilinear::SemilinearSet1::empty();
  std::vector<std::int64_t> members_;
  std::vector<BigInt> bases_;
};

/// Sieve over [0, limit]: entry x is set iff x >= 1 is squarefree.
std::vector<bool> squarefree_up_to(std::int64_t limit);

/// |A ∩ [-h, h]| for every window h, by scanning.
DensityEstimate empirical_density(const MembershipSource& a, const std::vector<std::int64_t>& windows);

struct APRun {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  /// Longest run of consecutive terms N i + k inside A ∩ [-h, h].
  std::int64_t max_run = 0;
  /// First term of the first longest run.
  std::int64_t start = 0;
  /// A longest run reaches the first or last term inside the window.
  bool censored = false;
};

struct APRunReport {
  std::int64_t h = 0;
  std::vector<APRun> runs;  // ordered by (N, k)
  /// Largest max_run over all (N, k).
  std::int64_t longest() const;
};

APRunReport ap_run_analysis(const MembershipSource& a, std::int64_t h, std::int64_t n_max);

struct SyndeticReport {
  std::int64_t gap = 0;
  /// Longest interval of [-h, h] inside A + [0, b]; 0 when there is none.
  std::int64_t length = 0;
  std::int64_t begin = 0;
  std::int64_t end = -1;
  /// The interval touches -h or h.
  bool censored = false;
};

SyndeticReport piecewise_syndetic_window(const MembershipSource& a, std::int64_t h, std::int64_t b);

}  // namespace pa::sparseness

#endif  // PA_SPARSENESS_HPP
