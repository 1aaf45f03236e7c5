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

#ifndef PA_SRC_JSON_IO_HPP
#define PA_SRC_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "pa/cells.hpp"
#include "pa/density.hpp"
#include "pa/error.hpp"
#include "pa/pwlinear.hpp"

namespace pa::io {

using nlohmann::json;

/// Malformed JSON document or wrongly shaped field.
class DocumentError : public Error {
 public:
  using Error::Error;
};

/// JSON number when the value fits in 64 bits, decimal string otherwise.
json integer(const BigInt& v);
/// Accepts a JSON integer or a decimal string.
BigInt to_bigint(const json& v);
std::string rational_text(const Rational& r);

/// {"vars":[...],"pieces":[{"guard","body","divisor"}]}. A plain string is
/// read as an affine term over `default_vars`.
json pwfn_to_json(const PWLinearFn& f);
PWLinearFn pwfn_from_json(const json& doc, const std::vector<std::string>& default_vars);

json cell_to_json(const cells::WeakCell& c);
cells::WeakCell cell_from_json(const json& doc);

/// {"arity","indices":[{"label","members":[[...],...]}]}
json family_to_json(const cells::FiberFamily& f);
cells::FiberFamily family_from_json(const json& doc);

json expr_to_json(const cells::FamilyExpr& e);
cells::FamilyExpr expr_from_json(const json& doc);

/// [{"h","count","ratio"}]
json estimate_rows(const DensityEstimate& e);

/// Throws DocumentError for text that is not JSON.
json parse_document(const std::string& text);

}  // namespace pa::io

#endif  // PA_SRC_JSON_IO_HPP
