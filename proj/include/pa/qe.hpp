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

#ifndef PA_QE_HPP
#define PA_QE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pa/formula.hpp"

namespace pa::qe {

/// Cooper-style quantifier elimination. The result is quantifier-free,
/// mentions no variable outside f's free variables, and is equivalent to f
/// under every assignment. Output is simplified (constant folding, duplicate
/// removal, modulus reduction) but not minimal. Negations are pushed to the
/// atoms first; each block uses the -infinity/lower-bound expansion unless
/// the upper-bound set is strictly smaller.
Formula cooper_eliminate(const Formula& f);

/// Truth of a sentence. Throws DomainError when f has free variables.
bool decide_sentence(const Formula& f);

/// Normal form of a quantifier-free formula (negations on atoms, constants
/// folded). Equivalent to the input.
Formula simplify(const Formula& qf);

/// A satisfying assignment of `vars` with small absolute values, or nothing
/// if f is unsatisfiable. Free variables of f must be among `vars`.
std::optional<Assignment> find_model(const Formula& f, const std::vector<std::string>& vars);

}  // namespace pa::qe

#endif  // PA_QE_HPP
