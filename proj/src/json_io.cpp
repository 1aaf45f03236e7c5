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

#include "json_io.hpp"

#include "pa/error.hpp"

namespace pa::io {

namespace {

[[noreturn]] void bad(const std::string& message) { throw DocumentError(message); }

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) bad(std::string("expected an object holding '") + name + "'");
  auto it = doc.find(name);
  if (it == doc.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string text_of(const json& v, const char* what) {
  if (!v.is_string()) bad(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> names_of(const json& v, const char* what) {
  if (!v.is_array()) bad(std::string(what) + " must be an array of names");
  std::vector<std::string> out;
  for (const auto& n : v) out.push_back(text_of(n, what));
  return out;
}

}  // namespace

json integer(const BigInt& v) {
  if (fits_int64(v)) return to_int64(v);
  return pa::to_string(v);
}

BigInt to_bigint(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_number_unsigned()) return BigInt(v.get<unsigned long long>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    try {
      return BigInt(s);
    } catch (const std::exception&) {
      bad("bad integer '" + s + "'");
    }
  }
  bad("expected an integer");
}

std::string rational_text(const Rational& r) {
  return pa::to_string(boost::multiprecision::numerator(r)) + "/" +
         pa::to_string(boost::multiprecision::denominator(r));
}

json pwfn_to_json(const PWLinearFn& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces())
    pieces.push_back({{"guard", p.guard.to_string()},
                      {"body", p.body.to_string()},
                      {"divisor", integer(p.divisor)}});
  return {{"vars", f.variables()}, {"pieces", pieces}};
}

PWLinearFn pwfn_from_json(const json& doc, const std::vector<std::string>& default_vars) {
  if (doc.is_string()) return PWLinearFn::affine(default_vars, parse_term(doc.get<std::string>()));
  std::vector<std::string> vars =
      doc.contains("vars") ? names_of(doc["vars"], "vars") : default_vars;
  const json& pieces = field(doc, "pieces");
  if (!pieces.is_array()) bad("pieces must be an array");
  std::vector<LinearPiece> out;
  for (const auto& p : pieces) {
    Formula guard = p.contains("guard") ? parse_formula(text_of(p["guard"], "guard"))
                                        : Formula::truth(true);
    Term body = parse_term(text_of(field(p, "body"), "body"));
    BigInt divisor = p.contains("divisor") ? to_bigint(p["divisor"]) : BigInt(1);
    out.push_back({guard, body, divisor});
  }
  return PWLinearFn(vars, std::move(out));
}

json cell_to_json(const cells::WeakCell& c) {
  return {{"vars", c.variables()},
          {"t", c.t()},
          {"type", c.type()},
          {"base", c.base().to_string()},
          {"lower", c.lower() ? pwfn_to_json(*c.lower()) : json(nullptr)},
          {"upper", c.upper() ? pwfn_to_json(*c.upper()) : json(nullptr)},
          {"residue", integer(c.residue())},
          {"modulus", integer(c.modulus())}};
}

cells::WeakCell cell_from_json(const json& doc) {
  auto vars = names_of(field(doc, "vars"), "vars");
  std::string t = text_of(field(doc, "t"), "t");
  Formula base = doc.contains("base") ? parse_formula(text_of(doc["base"], "base"))
                                      : Formula::truth(true);
  auto bound = [&](const char* name) -> std::optional<PWLinearFn> {
    if (!doc.contains(name) || doc[name].is_null()) return std::nullopt;
    return pwfn_from_json(doc[name], vars);
  };
  BigInt modulus = doc.contains("modulus") ? to_bigint(doc["modulus"]) : BigInt(1);
  BigInt residue = doc.contains("residue") ? to_bigint(doc["residue"]) : BigInt(0);
  return cells::WeakCell(vars, t, base, bound("lower"), bound("upper"), residue, modulus);
}

json family_to_json(const cells::FiberFamily& f) {
  json indices = json::array();
  for (std::size_t i = 0; i < f.size(); ++i)
    indices.push_back({{"label", f.labels[i]}, {"members", f.members[i]}});
  return {{"arity", f.arity}, {"indices", indices}};
}

cells::FiberFamily family_from_json(const json& doc) {
  cells::FiberFamily f;
  const json& arity = field(doc, "arity");
  if (!arity.is_number_unsigned() && !(arity.is_number_integer() && arity.get<long long>() >= 0))
    bad("arity must be a nonnegative integer");
  f.arity = arity.get<std::size_t>();
  const json& indices = field(doc, "indices");
  if (!indices.is_array()) bad("indices must be an array");
  for (const auto& idx : indices) {
    f.labels.push_back(idx.contains("label") ? text_of(idx["label"], "label")
                                             : std::to_string(f.labels.size()));
    const json& members = field(idx, "members");
    if (!members.is_array()) bad("members must be an array of tuples");
    std::vector<cells::Tuple> set;
    for (const auto& u : members) {
      if (!u.is_array()) bad("each member must be an array of integers");
      cells::Tuple tuple;
      for (const auto& x : u) {
        if (!x.is_number_integer()) bad("tuple entries must be integers");
        tuple.push_back(x.get<std::int64_t>());
      }
      set.push_back(std::move(tuple));
    }
    f.members.push_back(std::move(set));
  }
  f.validate();
  return f;
}

json expr_to_json(const cells::FamilyExpr& e) {
  json kernel = e.has_cell_kernel() ? json{{"cell", cell_to_json(e.cell())}}
                                    : json{{"formula", std::get<Formula>(e.kernel).to_string()}};
  return {{"fiber_vars", e.fiber_vars},
          {"point_vars", e.point_vars},
          {"kernel", kernel},
          {"family", family_to_json(e.family)}};
}

cells::FamilyExpr expr_from_json(const json& doc) {
  cells::FamilyExpr e{names_of(field(doc, "fiber_vars"), "fiber_vars"),
                      names_of(field(doc, "point_vars"), "point_vars"), Formula::truth(true),
                      family_from_json(field(doc, "family"))};
  const json& kernel = field(doc, "kernel");
  if (kernel.is_object() && kernel.contains("cell"))
    e.kernel = cell_from_json(kernel["cell"]);
  else
    e.kernel = parse_formula(text_of(field(kernel, "formula"), "kernel formula"));
  e.validate();
  return e;
}

json estimate_rows(const DensityEstimate& e) {
  json rows = json::array();
  for (std::size_t i = 0; i < e.windows.size(); ++i)
    rows.push_back({{"h", e.windows[i]},
                    {"count", e.counts[i]},
                    {"ratio", rational_text(e.ratios[i])},
                    {"ratio_float", e.ratios[i].convert_to<double>()}});
  return rows;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw DocumentError(std::string("invalid JSON: ") + err.what());
  }
}

}  // namespace pa::io
