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

#include "pa/pa.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json_io.hpp"
#include "pa/cells.hpp"
#include "pa/error.hpp"
#include "pa/formula.hpp"
#include "pa/heights.hpp"
#include "pa/powers.hpp"
#include "pa/qe.hpp"
#include "pa/semilinear.hpp"
#include "pa/sparseness.hpp"

struct pa_formula {
  pa::Formula value;
};
struct pa_set1 {
  pa::semilinear::SemilinearSet1 value;
};
struct pa_pwfn {
  pa::PWLinearFn value;
};
struct pa_cell {
  pa::cells::WeakCell value;
};
struct pa_expr {
  pa::cells::FamilyExpr value;
};
struct pa_source {
  pa::sparseness::MembershipSource value;
};

namespace {

using pa::io::json;

thread_local std::string last_error;

struct ArgumentError : pa::Error {
  using pa::Error::Error;
};

template <typename Body>
pa_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return PA_OK;
  } catch (const pa::SyntaxError& e) {
    last_error = e.what();
    return PA_E_SYNTAX;
  } catch (const pa::io::DocumentError& e) {
    last_error = e.what();
    return PA_E_SYNTAX;
  } catch (const json::exception& e) {
    last_error = std::string("malformed document: ") + e.what();
    return PA_E_SYNTAX;
  } catch (const pa::DomainError& e) {
    last_error = e.what();
    return PA_E_DOMAIN;
  } catch (const pa::LimitError& e) {
    last_error = e.what();
    return PA_E_LIMIT;
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return PA_E_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PA_E_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PA_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return PA_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ArgumentError(std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& doc, char** out) { *out = copy_string(doc.dump()); }

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> out;
  std::string s(text ? text : "");
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    std::string item = s.substr(pos, next - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    pos = next + 1;
  }
  return out;
}

pa::BigInt parse_big(const std::string& s) {
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
    throw pa::DomainError("bad integer '" + s + "'");
  return pa::BigInt(s[0] == '+' ? s.substr(1) : s);
}

pa::Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return pa::Rational(parse_big(s));
  pa::BigInt den = parse_big(s.substr(slash + 1));
  if (den == 0) throw pa::DomainError("zero denominator in '" + s + "'");
  return pa::Rational(parse_big(s.substr(0, slash)), den);
}

std::vector<pa::BigInt> big_list(const char* text, const char* what) {
  std::vector<pa::BigInt> out;
  for (const auto& s : split_list(text)) out.push_back(parse_big(s));
  if (out.empty()) throw pa::DomainError(std::string("empty ") + what + " list");
  return out;
}

std::vector<pa::Rational> rational_list(const char* text, const char* what) {
  std::vector<pa::Rational> out;
  for (const auto& s : split_list(text)) out.push_back(parse_rational(s));
  if (out.empty()) throw pa::DomainError(std::string("empty ") + what + " list");
  return out;
}

json big_array(const std::vector<pa::BigInt>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(pa::io::integer(x));
  return out;
}

json rational_array(const std::vector<pa::Rational>& v) {
  json out = json::array();
  for (const auto& x : v) {
    if (boost::multiprecision::denominator(x) == 1)
      out.push_back(pa::to_string(boost::multiprecision::numerator(x)));
    else
      out.push_back(pa::io::rational_text(x));
  }
  return out;
}

pa::powers::PowerSumInstance instance(const char* k, const char* a, unsigned cap) {
  need(k, "k");
  need(a, "a");
  pa::powers::PowerSumInstance inst{rational_list(k, "coefficient"),
                                    pa::powers::PowerBasis(big_list(a, "base"), cap ? cap : 256)};
  inst.validate();
  return inst;
}

pa::Assignment assignment(const std::vector<std::string>& names, const int64_t* point, size_t n) {
  if (n != names.size())
    throw ArgumentError("expected " + std::to_string(names.size()) + " coordinates, got " +
                          std::to_string(n));
  if (n) need(point, "point");
  pa::Assignment at;
  for (size_t i = 0; i < n; ++i) at[names[i]] = point[i];
  return at;
}

}  // namespace

extern "C" {

const char* pa_version(void) { return "1.0.0"; }

const char* pa_last_error(void) { return last_error.c_str(); }

void pa_free_string(char* s) { std::free(s); }

/* Formulas */

pa_status pa_formula_parse(const char* text, pa_formula** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new pa_formula{pa::parse_formula(text)};
  });
}

void pa_formula_free(pa_formula* f) { delete f; }

pa_status pa_formula_to_string(const pa_formula* f, char** out) {
  return guarded([&] {
    need(f, "formula");
    need(out, "out");
    *out = copy_string(f->value.to_string());
  });
}

pa_status pa_formula_free_variables(const pa_formula* f, char** json_out) {
  return guarded([&] {
    need(f, "formula");
    need(json_out, "out");
    emit(json(f->value.free_variables()), json_out);
  });
}

pa_status pa_formula_eliminate(const pa_formula* f, pa_formula** out) {
  return guarded([&] {
    need(f, "formula");
    need(out, "out");
    *out = new pa_formula{pa::qe::cooper_eliminate(f->value)};
  });
}

pa_status pa_formula_decide(const pa_formula* f, int* truth) {
  return guarded([&] {
    need(f, "formula");
    need(truth, "out");
    *truth = pa::qe::decide_sentence(f->value) ? 1 : 0;
  });
}

pa_status pa_formula_eval(const pa_formula* f, size_t n, const char* const* names,
                          const int64_t* values, int* truth) {
  return guarded([&] {
    need(f, "formula");
    need(truth, "out");
    if (n) {
      need(names, "names");
      need(values, "values");
    }
    pa::Assignment at;
    for (size_t i = 0; i < n; ++i) {
      need(names[i], "name");
      at[names[i]] = values[i];
    }
    *truth = pa::eval_formula(f->value, at) ? 1 : 0;
  });
}

/* Semilinear sets */

pa_status pa_set1_from_formula(const pa_formula* f, pa_set1** out) {
  return guarded([&] {
    need(f, "formula");
    need(out, "out");
    *out = new pa_set1{pa::semilinear::semilinearize_1d(f->value)};
  });
}

void pa_set1_free(pa_set1* s) { delete s; }

pa_status pa_set1_contains(const pa_set1* s, int64_t x, int* member) {
  return guarded([&] {
    need(s, "set");
    need(member, "out");
    *member = s->value.contains(x) ? 1 : 0;
  });
}

pa_status pa_set1_count(const pa_set1* s, int64_t h, int64_t* count) {
  return guarded([&] {
    need(s, "set");
    need(count, "out");
    if (h < 0) throw pa::DomainError("window must be nonnegative");
    *count = s->value.count_in_window(h);
  });
}

pa_status pa_set1_density(const pa_set1* s, char** out) {
  return guarded([&] {
    need(s, "set");
    need(out, "out");
    *out = copy_string(pa::semilinear::exact_density(s->value).to_string());
  });
}

pa_status pa_set1_report(const pa_set1* s, char** json_out) {
  return guarded([&] {
    need(s, "set");
    need(json_out, "out");
    const auto& v = s->value;
    emit({{"period", v.period()},
          {"threshold", v.threshold()},
          {"positive_residues", v.positive_residues()},
          {"negative_residues", v.negative_residues()},
          {"insertions", v.insertions()},
          {"deletions", v.deletions()},
          {"density", pa::semilinear::exact_density(v).to_string()}},
         json_out);
  });
}

/* Heights */

pa_status pa_height(const char* tuple, char** json_out) {
  return guarded([&] {
    need(tuple, "tuple");
    need(json_out, "out");
    auto x = pa::heights::RationalTuple::parse(tuple);
    auto h = pa::heights::height_rational(x);
    auto places = pa::heights::height_by_places(x);
    std::string canonical;
    for (std::size_t i = 0; i < x.size(); ++i) {
      canonical += i ? "," : "";
      canonical += pa::to_string(x.numerators()[i]);
      if (x.denominator() != 1) canonical += "/" + pa::to_string(x.denominator());
    }
    emit({{"tuple", canonical},
          {"H", pa::io::integer(h.H)},
          {"logH", h.log_h},
          {"H_places", pa::io::integer(places.H)}},
         json_out);
  });
}

pa_status pa_subspace_bound(unsigned n, unsigned r, unsigned d, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = copy_string(pa::to_string(pa::heights::subspace_count_bound(n, r, d)));
  });
}

pa_status pa_height_classify(const char* x, const char* c, const char* k, int* cls) {
  return guarded([&] {
    need(x, "x");
    need(c, "c");
    need(k, "k");
    need(cls, "out");
    auto cl = pa::heights::classify_s1_s2(big_list(x, "x"), parse_big(c), rational_list(k, "k"));
    *cls = cl == pa::heights::HeightClass::S1 ? 1 : 2;
  });
}

/* Power sums */

pa_status pa_powers_solve(const char* k, const char* a, const char* h, unsigned exponent_cap,
                          char** json_out) {
  return guarded([&] {
    need(h, "h");
    need(json_out, "out");
    auto inst = instance(k, a, exponent_cap);
    pa::BigInt bound = parse_big(h);
    auto result = pa::powers::solve_power_sum(inst, bound);
    json solutions = json::array();
    for (const auto& s : result.solutions)
      solutions.push_back({{"c", pa::io::integer(s.c)}, {"exponents", s.exponents}});
    emit({{"k", rational_array(inst.k)},
          {"a", big_array(inst.basis.bases())},
          {"h", pa::io::integer(bound)},
          {"caps", result.caps},
          {"possibly_incomplete", result.possibly_incomplete},
          {"solutions", solutions}},
         json_out);
  });
}

pa_status pa_powers_bound(const char* k, const char* a, const char* h, char** json_out) {
  return guarded([&] {
    need(h, "h");
    need(json_out, "out");
    auto inst = instance(k, a, 0);
    pa::BigInt bound = parse_big(h);
    auto check = pa::powers::counting_bound_check(inst, bound);
    emit({{"k", rational_array(inst.k)},
          {"a", big_array(inst.basis.bases())},
          {"h", pa::io::integer(bound)},
          {"bound", pa::io::integer(check.bound)},
          {"s1", check.s1},
          {"s2", check.s2},
          {"within_bound", pa::BigInt(check.s2) <= check.bound},
          {"caps", check.caps}},
         json_out);
  });
}

pa_status pa_powers_image_density(const char* a, const pa_pwfn* f, const int64_t* windows,
                                  size_t n_windows, char** json_out) {
  return guarded([&] {
    need(a, "a");
    need(f, "function");
    need(json_out, "out");
    if (n_windows) need(windows, "windows");
    pa::powers::PowerBasis basis(big_list(a, "base"));
    std::vector<std::int64_t> w(windows, windows + n_windows);
    auto e = pa::powers::image_density_experiment(basis, f->value, w);
    emit({{"a", big_array(basis.bases())},
          {"f", pa::io::pwfn_to_json(f->value)},
          {"possibly_incomplete", e.possibly_incomplete},
          {"rows", pa::io::estimate_rows(e)}},
         json_out);
  });
}

/* Piecewise-affine functions */

pa_status pa_pwfn_parse(const char* text, const char* vars, pa_pwfn** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::string s(text);
    std::size_t first = s.find_first_not_of(" \t\n");
    if (first != std::string::npos && s[first] == '{') {
      auto doc = pa::io::parse_document(s);
      *out = new pa_pwfn{pa::io::pwfn_from_json(doc, split_list(vars))};
      return;
    }
    pa::Term body = pa::parse_term(s);
    std::vector<std::string> names = split_list(vars);
    if (names.empty())
      for (const auto& [v, c] : body.coefficients()) names.push_back(v);
    *out = new pa_pwfn{pa::PWLinearFn::affine(names, body)};
  });
}

void pa_pwfn_free(pa_pwfn* f) { delete f; }

pa_status pa_pwfn_to_json(const pa_pwfn* f, char** json_out) {
  return guarded([&] {
    need(f, "function");
    need(json_out, "out");
    emit(pa::io::pwfn_to_json(f->value), json_out);
  });
}

pa_status pa_pwfn_eval(const pa_pwfn* f, const int64_t* point, size_t n, int64_t* value) {
  return guarded([&] {
    need(f, "function");
    need(value, "out");
    pa::BigInt v = f->value.evaluate(assignment(f->value.variables(), point, n));
    if (!pa::fits_int64(v)) throw pa::LimitError("value does not fit in 64 bits");
    *value = pa::to_int64(v);
  });
}

pa_status pa_pwfn_validate(const pa_pwfn* f) {
  return guarded([&] {
    need(f, "function");
    f->value.validate();
  });
}

/* Weak cells */

pa_status pa_cell_from_json(const char* text, pa_cell** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = new pa_cell{pa::io::cell_from_json(pa::io::parse_document(text))};
  });
}

void pa_cell_free(pa_cell* c) { delete c; }

pa_status pa_cell_to_json(const pa_cell* c, char** json_out) {
  return guarded([&] {
    need(c, "cell");
    need(json_out, "out");
    emit(pa::io::cell_to_json(c->value), json_out);
  });
}

pa_status pa_cell_formula(const pa_cell* c, pa_formula** out) {
  return guarded([&] {
    need(c, "cell");
    need(out, "out");
    *out = new pa_formula{c->value.to_formula()};
  });
}

pa_status pa_cell_contains(const pa_cell* c, const int64_t* point, size_t n, int* member) {
  return guarded([&] {
    need(c, "cell");
    need(member, "out");
    *member = c->value.contains(assignment(c->value.all_variables(), point, n)) ? 1 : 0;
  });
}

pa_status pa_cell_diamond(const pa_cell* a, const pa_cell* b, size_t m, pa_cell** out) {
  return guarded([&] {
    need(a, "cell a");
    need(b, "cell b");
    need(out, "out");
    *out = new pa_cell{pa::cells::diamond_cells(a->value, b->value, m)};
  });
}

pa_status pa_cell_decompose(const pa_formula* f, const char* vars, char** json_out) {
  return guarded([&] {
    need(f, "formula");
    need(json_out, "out");
    json cells = json::array();
    for (const auto& c : pa::cells::decompose_to_weak_cells(f->value, split_list(vars)))
      cells.push_back(pa::io::cell_to_json(c));
    emit(cells, json_out);
  });
}

pa_status pa_union_lemma(const char* cells_json, size_t m, const char* family_json,
                         char** json_out) {
  return guarded([&] {
    need(cells_json, "cells");
    need(family_json, "family");
    need(json_out, "out");
    json doc = pa::io::parse_document(cells_json);
    if (!doc.is_array()) throw pa::io::DocumentError("cells must be a JSON array");
    std::vector<pa::cells::WeakCell> cells;
    for (const auto& c : doc) cells.push_back(pa::io::cell_from_json(c));
    auto family = pa::io::family_from_json(pa::io::parse_document(family_json));
    json groups = json::array();
    for (const auto& g : pa::cells::technical_union_decompose(cells, m, family))
      groups.push_back(pa::io::expr_to_json(g));
    emit(groups, json_out);
  });
}

pa_status pa_cover_h(const pa_pwfn* f, int64_t l, int64_t n, const char* e_points,
                     const char* e_var, pa_pwfn** out) {
  return guarded([&] {
    need(f, "function");
    need(e_points, "e_points");
    need(out, "out");
    std::vector<pa::BigInt> pts;
    for (const auto& s : split_list(e_points)) pts.push_back(parse_big(s));
    *out = new pa_pwfn{
        pa::cells::build_covering_h(f->value, l, n, pts, e_var && *e_var ? e_var : "e")};
  });
}

/* Family expressions */

pa_status pa_expr_from_json(const char* text, pa_expr** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = new pa_expr{pa::io::expr_from_json(pa::io::parse_document(text))};
  });
}

void pa_expr_free(pa_expr* e) { delete e; }

pa_status pa_expr_to_json(const pa_expr* e, char** json_out) {
  return guarded([&] {
    need(e, "expression");
    need(json_out, "out");
    emit(pa::io::expr_to_json(e->value), json_out);
  });
}

pa_status pa_expr_eval(const pa_expr* e, const int64_t* lo, const int64_t* hi, size_t dims,
                       char** json_out) {
  return guarded([&] {
    need(e, "expression");
    need(json_out, "out");
    if (dims) {
      need(lo, "lo");
      need(hi, "hi");
    }
    pa::cells::Window w;
    for (size_t i = 0; i < dims; ++i) w.emplace_back(lo[i], hi[i]);
    emit(json(pa::cells::eval_family_expr(e->value, w)), json_out);
  });
}

pa_status pa_expr_complement(const pa_expr* e, uint64_t product_cap, pa_expr** out) {
  return guarded([&] {
    need(e, "expression");
    need(out, "out");
    *out = new pa_expr{pa::cells::family_boolean(pa::cells::BooleanOp::Complement, e->value,
                                                 nullptr, product_cap ? product_cap : 1000000)};
  });
}

pa_status pa_expr_intersect(const pa_expr* a, const pa_expr* b, uint64_t product_cap,
                            pa_expr** out) {
  return guarded([&] {
    need(a, "expression a");
    need(b, "expression b");
    need(out, "out");
    *out = new pa_expr{pa::cells::family_boolean(pa::cells::BooleanOp::Intersect, a->value,
                                                 &b->value, product_cap ? product_cap : 1000000)};
  });
}

pa_status pa_expr_project(const pa_expr* e, pa_expr** out) {
  return guarded([&] {
    need(e, "expression");
    need(out, "out");
    *out = new pa_expr{pa::cells::project_s(e->value)};
  });
}

/* Sparseness */

pa_status pa_source_parse(const char* spec, pa_source** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new pa_source{pa::sparseness::MembershipSource::parse(spec)};
  });
}

void pa_source_free(pa_source* s) { delete s; }

pa_status pa_source_describe(const pa_source* s, char** out) {
  return guarded([&] {
    need(s, "set");
    need(out, "out");
    *out = copy_string(s->value.describe());
  });
}

pa_status pa_source_contains(const pa_source* s, int64_t x, int* member) {
  return guarded([&] {
    need(s, "set");
    need(member, "out");
    *member = s->value.contains(x) ? 1 : 0;
  });
}

pa_status pa_sparse_density(const pa_source* s, const int64_t* windows, size_t n_windows,
                            char** json_out) {
  return guarded([&] {
    need(s, "set");
    need(json_out, "out");
    if (n_windows) need(windows, "windows");
    auto e = pa::sparseness::empirical_density(
        s->value, std::vector<std::int64_t>(windows, windows + n_windows));
    emit({{"set", s->value.describe()},
          {"rows", pa::io::estimate_rows(e)},
          {"upper", pa::io::rational_text(e.upper)},
          {"lower", pa::io::rational_text(e.lower)}},
         json_out);
  });
}

pa_status pa_sparse_ap_runs(const pa_source* s, int64_t h, int64_t n_max, char** json_out) {
  return guarded([&] {
    need(s, "set");
    need(json_out, "out");
    auto report = pa::sparseness::ap_run_analysis(s->value, h, n_max);
    json rows = json::array();
    for (const auto& r : report.runs)
      rows.push_back({{"N", r.modulus},
                      {"k", r.residue},
                      {"max_run", r.max_run},
                      {"start", r.start},
                      {"censored", r.censored}});
    emit({{"set", s->value.describe()}, {"h", h}, {"rows", rows}, {"longest", report.longest()}},
         json_out);
  });
}

pa_status pa_sparse_syndetic(const pa_source* s, int64_t h, int64_t b_max, char** json_out) {
  return guarded([&] {
    need(s, "set");
    need(json_out, "out");
    if (b_max < 0) throw pa::DomainError("gap bound must be nonnegative");
    json rows = json::array();
    for (int64_t b = 0; b <= b_max; ++b) {
      auto r = pa::sparseness::piecewise_syndetic_window(s->value, h, b);
      rows.push_back({{"b", b},
                      {"length", r.length},
                      {"begin", r.begin},
                      {"end", r.end},
                      {"censored", r.censored}});
    }
    emit({{"set", s->value.describe()}, {"h", h}, {"rows", rows}}, json_out);
  });
}

}  // extern "C"
