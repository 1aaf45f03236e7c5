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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "CLI11.hpp"
#include "json.hpp"
#include "pa/pa.h"

namespace {

using json = nlohmann::json;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exit status 1 with a message.
struct Failure {
  std::string message;
};

void check(pa_status s) {
  if (s != PA_OK) throw Failure{pa_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Formula = std::unique_ptr<pa_formula, Deleter<pa_formula, pa_formula_free>>;
using Set1 = std::unique_ptr<pa_set1, Deleter<pa_set1, pa_set1_free>>;
using Fn = std::unique_ptr<pa_pwfn, Deleter<pa_pwfn, pa_pwfn_free>>;
using Cell = std::unique_ptr<pa_cell, Deleter<pa_cell, pa_cell_free>>;
using Expr = std::unique_ptr<pa_expr, Deleter<pa_expr, pa_expr_free>>;
using Source = std::unique_ptr<pa_source, Deleter<pa_source, pa_source_free>>;

std::string take(char* s) {
  std::string out(s);
  pa_free_string(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

Formula parse_formula(const std::string& text) {
  pa_formula* f = nullptr;
  check(pa_formula_parse(text.c_str(), &f));
  return Formula(f);
}

/// `@path` reads the file, anything else is literal.
std::string document(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw Failure{"cannot read " + arg.substr(1)};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::int64_t to_i64(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Failure{"bad integer '" + s + "'"};
}

std::vector<std::int64_t> int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& item : split(s, ',')) out.push_back(to_i64(item));
  return out;
}

/// "-20:20" or "-5:5,0:10"; a single range is repeated to `dims`.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> parse_window(const std::string& s,
                                                                           std::size_t dims) {
  std::vector<std::int64_t> lo, hi;
  for (const auto& range : split(s, ',')) {
    auto colon = range.find(':', 1);
    if (colon == std::string::npos) throw Failure{"window range '" + range + "' needs lo:hi"};
    lo.push_back(to_i64(range.substr(0, colon)));
    hi.push_back(to_i64(range.substr(colon + 1)));
  }
  if (lo.size() == 1 && dims > 1) {
    lo.assign(dims, lo[0]);
    hi.assign(dims, hi[0]);
  }
  if (lo.size() != dims)
    throw Failure{"window has " + std::to_string(lo.size()) + " ranges, expected " +
                  std::to_string(dims)};
  return {lo, hi};
}

std::string csv(const json& rows, const std::vector<std::string>& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const json& v = row.at(columns[i]);
      out += i ? "," : "";
      out += v.is_string() ? v.get<std::string>() : v.dump();
    }
    out += "\n";
  }
  return out;
}

struct Options {
  std::string format;
  std::string output;
  std::string config;
  bool verify = false;
  std::uint64_t seed = 0;
};

struct Report {
  std::string text;
  bool verify_failed = false;
};

Report as_json(const json& doc) { return {doc.dump(2) + "\n", false}; }

bool want_csv(const Options& o, bool csv_default) {
  if (o.format.empty()) return csv_default;
  return o.format == "csv";
}

Rational rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

BigInt power(const BigInt& a, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

/// Recomputes every witness and, when the cap box is small, redoes the whole
/// enumeration.
json verify_powers(const std::vector<std::string>& k, const std::vector<std::string>& a,
                   const std::string& h, const json& report) {
  std::vector<Rational> kr;
  std::vector<BigInt> ab;
  for (const auto& s : k) kr.push_back(rational(s));
  for (const auto& s : a) ab.push_back(BigInt(s));
  BigInt bound(h);
  std::uint64_t mismatches = 0;
  std::set<BigInt> reported;
  for (const auto& sol : report["solutions"]) {
    Rational sum = 0;
    for (std::size_t i = 0; i < kr.size(); ++i)
      sum += kr[i] * power(ab[i], sol["exponents"][i].get<unsigned>());
    BigInt c = sol["c"].is_string() ? BigInt(sol["c"].get<std::string>())
                                    : BigInt(sol["c"].get<long long>());
    if (sum != Rational(c)) ++mismatches;
    reported.insert(c);
  }
  json out = {{"witnesses_checked", report["solutions"].size()}};
  std::vector<int> caps = report["caps"].get<std::vector<int>>();
  double box = 1;
  for (int c : caps) box *= c < 0 ? 1 : c + 1;
  bool exhaustive = box <= 2e6;
  for (int c : caps) exhaustive = exhaustive && c >= 0;
  if (exhaustive) {
    std::set<BigInt> found;
    std::vector<unsigned> e(caps.size(), 0);
    while (true) {
      Rational sum = 0;
      for (std::size_t i = 0; i < kr.size(); ++i) sum += kr[i] * power(ab[i], e[i]);
      if (boost::multiprecision::denominator(sum) == 1) {
        BigInt c = boost::multiprecision::numerator(sum);
        if (abs(c) <= bound) found.insert(c);
      }
      std::size_t i = 0;
      while (i < e.size() && static_cast<int>(e[i]) == caps[i]) e[i++] = 0;
      if (i == e.size()) break;
      ++e[i];
    }
    if (found != reported) ++mismatches;
  }
  out["exhaustive"] = exhaustive;
  out["mismatches"] = mismatches;
  return out;
}

// ---------------------------------------------------------------------------

struct Cli {
  CLI::App app{"Presburger sets, heights, power sums and sparseness experiments", "pa"};
  Options opt;
  std::function<Report()> action;

  // shared option storage
  std::string text, k, a, h, f, vars, windows, window, cell_a, cell_b, expr, cells_doc,
      family_doc, set, e_points, e_var = "e", bound_spec, classify_c, classify_k;
  std::size_t m = 0;
  std::int64_t h_int = 0, n_max = 4, b_max = 0, l = 1, n_mod = 1;
  unsigned cap = 0;
  std::uint64_t product_cap = 0;
  bool witnesses = false;

  Cli() {
    app.set_help_flag("--help", "Print this help message and exit");
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", opt.output, "Write the report to a file instead of stdout");
    app.add_option("--config", opt.config, "JSON experiment config (command, parameters, format, seed)");
    app.add_flag("--verify", opt.verify, "Cross-check the result with a brute-force oracle");
    app.add_option("--seed", opt.seed, "Seed recorded in the report of randomized runs");

    auto* qe = app.add_subcommand("qe", "Eliminate quantifiers");
    qe->add_option("formula", text)->required();
    qe->callback([this] { action = [this] { return run_qe(); }; });

    auto* decide = app.add_subcommand("decide", "Decide a sentence");
    decide->add_option("sentence", text)->required();
    decide->callback([this] { action = [this] { return run_decide(); }; });

    auto* density = app.add_subcommand("density", "Densities of one-variable formulas");
    density->require_subcommand(1);
    auto* exact = density->add_subcommand("exact", "Exact density via the semilinear form");
    exact->add_option("formula", text)->required();
    exact->callback([this] { action = [this] { return run_density_exact(); }; });
    auto* empirical = density->add_subcommand("empirical", "Windowed counts");
    empirical->add_option("formula", text)->required();
    empirical->add_option("--windows", windows)->default_val("100,1000,10000");
    empirical->callback([this] { action = [this] { return run_density_empirical(); }; });

    auto* height = app.add_subcommand("height", "Multiplicative height of a rational tuple");
    height->add_option("tuple", text);
    height->add_option("--subspace-bound", bound_spec, "n,r,d");
    height->add_option("--classify-c", classify_c, "c for the S1/S2 split (tuple must be integral)");
    height->add_option("--classify-k", classify_k, "k_1,...,k_n for the S1/S2 split");
    height->callback([this] { action = [this] { return run_height(); }; });

    auto* powers = app.add_subcommand("powers", "Sums of powers");
    powers->require_subcommand(1);
    auto* solve = powers->add_subcommand("solve", "All c with |c| <= h");
    solve->add_option("--k", k)->required();
    solve->add_option("--a", a)->required();
    solve->add_option("--h", h)->required();
    solve->add_option("--cap", cap, "Exponent ceiling (default 256)");
    solve->add_flag("--witnesses", witnesses, "Full report with exponent witnesses");
    solve->callback([this] { action = [this] { return run_powers_solve(); }; });
    auto* bound = powers->add_subcommand("bound", "Counting bound against S2 solutions");
    bound->add_option("--k", k)->required();
    bound->add_option("--a", a)->required();
    bound->add_option("--h", h)->required();
    bound->callback([this] { action = [this] { return run_powers_bound(); }; });
    auto* image = powers->add_subcommand("image-density", "Windowed density of f(E^M)");
    image->add_option("--a", a)->required();
    image->add_option("--f", f, "Affine term or piecewise JSON")->required();
    image->add_option("--vars", vars, "Argument order of f");
    image->add_option("--windows", windows)->default_val("100,1000,10000");
    image->callback([this] { action = [this] { return run_image_density(); }; });

    auto* cells = app.add_subcommand("cells", "Weak-cell calculus");
    cells->require_subcommand(1);
    auto* diamond = cells->add_subcommand("diamond", "Diamond product of two cells");
    diamond->add_option("--a", cell_a, "Cell JSON or @file")->required();
    diamond->add_option("--b", cell_b, "Cell JSON or @file")->required();
    diamond->add_option("--m", m, "Private coordinates per operand")->default_val(1);
    diamond->callback([this] { action = [this] { return run_diamond(); }; });
    auto* decompose = cells->add_subcommand("decompose", "Split a formula into weak cells");
    decompose->add_option("formula", text)->required();
    decompose->add_option("--vars", vars, "Coordinates, last one is t")->required();
    decompose->callback([this] { action = [this] { return run_decompose(); }; });
    auto* project = cells->add_subcommand("project", "Project an S_{n+1} expression along t");
    project->add_option("--expr", expr, "Expression JSON or @file")->required();
    project->add_option("--window", window, "lo:hi per remaining coordinate");
    project->callback([this] { action = [this] { return run_project(); }; });
    auto* lemma = cells->add_subcommand("union-lemma", "Three-group decomposition of a cell union");
    lemma->add_option("--cells", cells_doc, "JSON array of cells or @file")->required();
    lemma->add_option("--family", family_doc, "Family JSON or @file")->required();
    lemma->add_option("--m", m)->default_val(1);
    lemma->add_option("--window", window, "Evaluate both sides on lo:hi per point coordinate");
    lemma->callback([this] { action = [this] { return run_union_lemma(); }; });
    auto* cover = cells->add_subcommand("cover-h", "Piecewise h covering a sparse set by h(E^M)");
    cover->add_option("--f", f, "Affine term or piecewise JSON")->required();
    cover->add_option("--vars", vars);
    cover->add_option("--l", l)->required();
    cover->add_option("--N", n_mod)->required();
    cover->add_option("--e", e_points, "l*N distinct points of E")->required();
    cover->add_option("--e-var", e_var);
    cover->callback([this] { action = [this] { return run_cover_h(); }; });

    auto* sparse = app.add_subcommand("sparse", "Sparseness scans");
    sparse->require_subcommand(1);
    auto* sd = sparse->add_subcommand("density", "Windowed counts");
    sd->add_option("--set", set)->required();
    sd->add_option("--h", windows, "Comma list of windows")->required();
    sd->callback([this] { action = [this] { return run_sparse_density(); }; });
    auto* runs = sparse->add_subcommand("ap-runs", "Longest progression runs");
    runs->add_option("--set", set)->required();
    runs->add_option("--h", h_int)->required();
    runs->add_option("--Nmax", n_max)->default_val(4);
    runs->callback([this] { action = [this] { return run_ap_runs(); }; });
    auto* syn = sparse->add_subcommand("syndetic", "Longest interval inside A + [0,b]");
    syn->add_option("--set", set)->required();
    syn->add_option("--h", h_int)->required();
    syn->add_option("--b", b_max, "Sweep b = 0..b")->default_val(0);
    syn->callback([this] { action = [this] { return run_syndetic(); }; });
  }

  Report run_qe() {
    auto in = parse_formula(text);
    pa_formula* out = nullptr;
    check(pa_formula_eliminate(in.get(), &out));
    Formula result(out);
    char* s = nullptr;
    check(pa_formula_to_string(result.get(), &s));
    std::string qf = take(s);
    json doc = {{"formula", text}, {"result", qf}};
    Report r;
    if (opt.verify) {
      // sample assignments on a small box
      char* fv = nullptr;
      check(pa_formula_free_variables(in.get(), &fv));
      auto names = take_json(fv).get<std::vector<std::string>>();
      std::vector<const char*> cnames;
      for (const auto& n : names) cnames.push_back(n.c_str());
      std::uint64_t points = 0, mismatches = 0;
      const int radius = names.size() <= 2 ? 12 : 4;
      std::vector<std::int64_t> p(names.size(), -radius);
      while (true) {
        int x = 0, y = 0;
        check(pa_formula_eval(in.get(), names.size(), cnames.data(), p.data(), &x));
        check(pa_formula_eval(result.get(), names.size(), cnames.data(), p.data(), &y));
        ++points;
        mismatches += x != y;
        std::size_t i = 0;
        while (i < p.size() && p[i] == radius) p[i++] = -radius;
        if (i == p.size()) break;
        ++p[i];
      }
      doc["verify"] = {{"points", points}, {"mismatches", mismatches}};
      r.verify_failed = mismatches > 0;
    }
    r.text = opt.format == "json" || opt.verify ? doc.dump(2) + "\n" : qf + "\n";
    return r;
  }

  Report run_decide() {
    auto in = parse_formula(text);
    int truth = 0;
    check(pa_formula_decide(in.get(), &truth));
    Report r;
    json doc = {{"sentence", text}, {"value", truth == 1}};
    if (opt.verify) {
      pa_formula* out = nullptr;
      check(pa_formula_eliminate(in.get(), &out));
      Formula qf(out);
      int again = 0;
      check(pa_formula_eval(qf.get(), 0, nullptr, nullptr, &again));
      doc["verify"] = {{"mismatches", again != truth ? 1 : 0}};
      r.verify_failed = again != truth;
    }
    r.text = opt.format == "json" || opt.verify ? doc.dump(2) + "\n"
                                                : std::string(truth ? "true" : "false") + "\n";
    return r;
  }

  Report run_density_exact() {
    auto in = parse_formula(text);
    pa_set1* s = nullptr;
    check(pa_set1_from_formula(in.get(), &s));
    Set1 set1(s);
    char* rep = nullptr;
    check(pa_set1_report(set1.get(), &rep));
    json doc = take_json(rep);
    doc["formula"] = text;
    Report r;
    if (opt.verify) {
      // membership of the canonical form against direct evaluation
      char* fv = nullptr;
      check(pa_formula_free_variables(in.get(), &fv));
      auto names = take_json(fv).get<std::vector<std::string>>();
      std::string var = names.empty() ? "x" : names[0];
      const char* cname = var.c_str();
      std::int64_t reach = doc["threshold"].get<std::int64_t>() + 2 * doc["period"].get<std::int64_t>();
      reach = std::min<std::int64_t>(reach, 2000);
      std::uint64_t mismatches = 0;
      for (std::int64_t x = -reach; x <= reach; ++x) {
        int direct = 0, member = 0;
        check(pa_formula_eval(in.get(), names.empty() ? 0 : 1, &cname, &x, &direct));
        check(pa_set1_contains(set1.get(), x, &member));
        mismatches += direct != member;
      }
      doc["verify"] = {{"points", 2 * reach + 1}, {"mismatches", mismatches}};
      r.verify_failed = mismatches > 0;
    }
    r.text = doc.dump(2) + "\n";
    return r;
  }

  Report sparse_density_report(pa_source* src, const std::string& label) {
    auto w = int_list(windows);
    char* out = nullptr;
    check(pa_sparse_density(src, w.data(), w.size(), &out));
    json doc = take_json(out);
    Report r;
    if (opt.verify) {
      std::uint64_t mismatches = 0;
      json checked = json::array();
      for (const auto& row : doc["rows"]) {
        std::int64_t hh = row["h"].get<std::int64_t>();
        if (hh > 1000000) continue;
        std::int64_t count = 0;
        for (std::int64_t x = -hh; x <= hh; ++x) {
          int in = 0;
          check(pa_source_contains(src, x, &in));
          count += in;
        }
        mismatches += count != row["count"].get<std::int64_t>();
        checked.push_back(hh);
      }
      doc["verify"] = {{"windows", checked}, {"mismatches", mismatches}};
      r.verify_failed = mismatches > 0;
    }
    doc["set"] = label;
    r.text = want_csv(opt, true) && !opt.verify ? csv(doc["rows"], {"h", "count", "ratio"})
                                                : doc.dump(2) + "\n";
    return r;
  }

  Report run_density_empirical() {
    pa_source* s = nullptr;
    check(pa_source_parse(("formula:" + text).c_str(), &s));
    Source src(s);
    return sparse_density_report(src.get(), "formula:" + text);
  }

  Report run_height() {
    json doc = json::object();
    if (!bound_spec.empty()) {
      auto nrd = int_list(bound_spec);
      if (nrd.size() != 3) throw Failure{"--subspace-bound needs n,r,d"};
      for (auto v : nrd)
        if (v < 0) throw Failure{"--subspace-bound values must be nonnegative"};
      char* out = nullptr;
      check(pa_subspace_bound(static_cast<unsigned>(nrd[0]), static_cast<unsigned>(nrd[1]),
                              static_cast<unsigned>(nrd[2]), &out));
      doc["subspace_bound"] = {{"n", nrd[0]}, {"r", nrd[1]}, {"d", nrd[2]}, {"bound", take(out)}};
    }
    Report r;
    if (!text.empty()) {
      char* out = nullptr;
      check(pa_height(text.c_str(), &out));
      json h = take_json(out);
      for (auto& [key, value] : h.items()) doc[key] = value;
      if (!classify_c.empty() || !classify_k.empty()) {
        int cls = 0;
        check(pa_height_classify(text.c_str(), classify_c.c_str(), classify_k.c_str(), &cls));
        doc["class"] = cls == 1 ? "S1" : "S2";
      }
      if (opt.verify) {
        bool same = doc["H"] == doc["H_places"];
        doc["verify"] = {{"mismatches", same ? 0 : 1}};
        r.verify_failed = !same;
      }
    } else if (bound_spec.empty()) {
      throw CLI::RequiredError("tuple or --subspace-bound");
    }
    r.text = doc.dump(2) + "\n";
    return r;
  }

  Report run_powers_solve() {
    char* out = nullptr;
    check(pa_powers_solve(k.c_str(), a.c_str(), h.c_str(), cap, &out));
    json doc = take_json(out);
    Report r;
    if (opt.verify) {
      doc["verify"] = verify_powers(doc["k"].get<std::vector<std::string>>(), split(a, ','), h, doc);
      r.verify_failed = doc["verify"]["mismatches"].get<std::uint64_t>() > 0;
    }
    if (witnesses || opt.verify) return {doc.dump(2) + "\n", r.verify_failed};
    json values = json::array();
    for (const auto& s : doc["solutions"]) values.push_back(s["c"]);
    r.text = values.dump() + "\n";
    return r;
  }

  Report run_powers_bound() {
    char* out = nullptr;
    check(pa_powers_bound(k.c_str(), a.c_str(), h.c_str(), &out));
    json doc = take_json(out);
    return {doc.dump(2) + "\n", opt.verify && !doc["within_bound"].get<bool>()};
  }

  Fn parse_fn() {
    pa_pwfn* fn = nullptr;
    check(pa_pwfn_parse(document(f).c_str(), vars.c_str(), &fn));
    return Fn(fn);
  }

  Report run_image_density() {
    Fn fn = parse_fn();
    auto w = int_list(windows);
    char* out = nullptr;
    check(pa_powers_image_density(a.c_str(), fn.get(), w.data(), w.size(), &out));
    json doc = take_json(out);
    if (want_csv(opt, true)) return {csv(doc["rows"], {"h", "count", "ratio"}), false};
    return as_json(doc);
  }

  Cell parse_cell(const std::string& arg) {
    pa_cell* c = nullptr;
    check(pa_cell_from_json(document(arg).c_str(), &c));
    return Cell(c);
  }

  Report run_diamond() {
    Cell ca = parse_cell(cell_a), cb = parse_cell(cell_b);
    pa_cell* c = nullptr;
    check(pa_cell_diamond(ca.get(), cb.get(), m, &c));
    Cell cc(c);
    char* out = nullptr;
    check(pa_cell_to_json(cc.get(), &out));
    json doc = take_json(out);
    Report r;
    if (opt.verify) {
      // membership against the defining predicate on a small box
      char* ja = nullptr;
      check(pa_cell_to_json(ca.get(), &ja));
      std::size_t d = take_json(ja)["vars"].size() + 1;
      std::size_t n = d - 1 - m;
      std::size_t dim = 2 * m + n + 1;
      const std::int64_t radius = dim <= 3 ? 8 : dim == 4 ? 4 : 2;
      std::vector<std::int64_t> p(dim, -radius), pa(d), pb(d);
      std::uint64_t points = 0, mismatches = 0;
      while (dim <= 6) {
        for (std::size_t i = 0; i < m; ++i) {
          pa[i] = p[i];
          pb[i] = p[m + i];
        }
        for (std::size_t j = 0; j <= n; ++j) pa[m + j] = pb[m + j] = p[2 * m + j];
        int in_a = 0, in_b = 0, in_c = 0;
        check(pa_cell_contains(ca.get(), pa.data(), d, &in_a));
        check(pa_cell_contains(cb.get(), pb.data(), d, &in_b));
        check(pa_cell_contains(cc.get(), p.data(), dim, &in_c));
        ++points;
        mismatches += (in_a && in_b) != (in_c != 0);
        std::size_t i = 0;
        while (i < dim && p[i] == radius) p[i++] = -radius;
        if (i == dim) break;
        ++p[i];
      }
      doc["verify"] = {{"points", points}, {"radius", radius}, {"mismatches", mismatches}};
      r.verify_failed = mismatches > 0;
    }
    r.text = doc.dump(2) + "\n";
    return r;
  }

  Report run_decompose() {
    auto in = parse_formula(text);
    char* out = nullptr;
    check(pa_cell_decompose(in.get(), vars.c_str(), &out));
    json doc = take_json(out);
    Report r;
    if (opt.verify) {
      auto names = split(vars, ',');
      std::vector<const char*> cnames;
      for (const auto& n : names) cnames.push_back(n.c_str());
      std::vector<Cell> cells;
      for (const auto& c : doc) cells.push_back(parse_cell(c.dump()));
      const std::int64_t radius = names.size() <= 2 ? 15 : names.size() == 3 ? 6 : 3;
      std::vector<std::int64_t> p(names.size(), -radius);
      std::uint64_t points = 0, mismatches = 0;
      while (names.size() <= 5) {
        int in_f = 0, hits = 0;
        check(pa_formula_eval(in.get(), names.size(), cnames.data(), p.data(), &in_f));
        for (const auto& c : cells) {
          int in_c = 0;
          check(pa_cell_contains(c.get(), p.data(), p.size(), &in_c));
          hits += in_c;
        }
        ++points;
        mismatches += hits != in_f;
        std::size_t i = 0;
        while (i < p.size() && p[i] == radius) p[i++] = -radius;
        if (i == p.size()) break;
        ++p[i];
      }
      json wrapped = {{"cells", doc}, {"verify", {{"points", points}, {"mismatches", mismatches}}}};
      return {wrapped.dump(2) + "\n", mismatches > 0};
    }
    r.text = doc.dump(2) + "\n";
    return r;
  }

  json eval_expr(pa_expr* e, std::size_t dims) {
    auto [lo, hi] = parse_window(window, dims);
    char* out = nullptr;
    check(pa_expr_eval(e, lo.data(), hi.data(), dims, &out));
    return take_json(out);
  }

  Report run_project() {
    pa_expr* e = nullptr;
    check(pa_expr_from_json(document(expr).c_str(), &e));
    Expr in(e);
    pa_expr* p = nullptr;
    check(pa_expr_project(in.get(), &p));
    Expr proj(p);
    char* out = nullptr;
    check(pa_expr_to_json(proj.get(), &out));
    json doc = {{"projection", take_json(out)}};
    std::size_t dims = doc["projection"]["point_vars"].size();
    Report r;
    if (!window.empty()) {
      doc["window"] = window;
      doc["points"] = eval_expr(proj.get(), dims);
      if (opt.verify) {
        // exists t on a widened t range
        auto [lo, hi] = parse_window(window, dims);
        std::int64_t reach = 64;
        for (std::size_t i = 0; i < dims; ++i)
          reach = std::max({reach, 4 * std::abs(lo[i]), 4 * std::abs(hi[i])});
        lo.push_back(-reach);
        hi.push_back(reach);
        char* pts = nullptr;
        check(pa_expr_eval(in.get(), lo.data(), hi.data(), dims + 1, &pts));
        std::set<std::vector<std::int64_t>> expect;
        for (auto pt : take_json(pts).get<std::vector<std::vector<std::int64_t>>>()) {
          pt.pop_back();
          expect.insert(pt);
        }
        auto got = doc["points"].get<std::vector<std::vector<std::int64_t>>>();
        bool same = std::set<std::vector<std::int64_t>>(got.begin(), got.end()) == expect;
        doc["verify"] = {{"t_range", {-reach, reach}}, {"mismatches", same ? 0 : 1}};
        r.verify_failed = !same;
      }
    }
    r.text = doc.dump(2) + "\n";
    return r;
  }

  Report run_union_lemma() {
    char* out = nullptr;
    check(pa_union_lemma(document(cells_doc).c_str(), m, document(family_doc).c_str(), &out));
    json groups = take_json(out);
    json doc = {{"groups", groups}};
    Report r;
    if (!window.empty()) {
      json cells = json::parse(document(cells_doc));
      std::size_t dims = groups[0]["point_vars"].size();
      std::set<std::vector<std::int64_t>> lhs, rhs;
      for (const auto& g : groups) {
        pa_expr* e = nullptr;
        check(pa_expr_from_json(g.dump().c_str(), &e));
        Expr ge(e);
        for (auto pt : eval_expr(ge.get(), dims).get<std::vector<std::vector<std::int64_t>>>())
          rhs.insert(pt);
      }
      // the original expression has kernel C_1 | ... | C_{k+1}
      json original = groups[0];
      original["kernel"] = {{"formula", union_formula(cells)}};
      pa_expr* oe = nullptr;
      check(pa_expr_from_json(original.dump().c_str(), &oe));
      Expr orig(oe);
      for (auto pt : eval_expr(orig.get(), dims).get<std::vector<std::vector<std::int64_t>>>())
        lhs.insert(pt);
      doc["window"] = window;
      doc["points"] = std::vector<std::vector<std::int64_t>>(rhs.begin(), rhs.end());
      doc["identity_holds"] = lhs == rhs;
      r.verify_failed = opt.verify && lhs != rhs;
    }
    r.text = doc.dump(2) + "\n";
    return r;
  }

  /// Disjunction of the cells' defining formulas.
  std::string union_formula(const json& cells) {
    std::string out;
    for (const auto& c : cells) {
      Cell cell = parse_cell(c.dump());
      pa_formula* f = nullptr;
      check(pa_cell_formula(cell.get(), &f));
      Formula owned(f);
      char* text = nullptr;
      check(pa_formula_to_string(owned.get(), &text));
      out += (out.empty() ? "(" : " | (") + take(text) + ")";
    }
    return out.empty() ? "0 < 0" : out;
  }

  Report run_cover_h() {
    Fn fn = parse_fn();
    pa_pwfn* hp = nullptr;
    check(pa_cover_h(fn.get(), l, n_mod, e_points.c_str(), e_var.c_str(), &hp));
    Fn hfn(hp);
    char* out = nullptr;
    check(pa_pwfn_to_json(hfn.get(), &out));
    json doc = take_json(out);
    Report r;
    if (opt.verify) {
      check(pa_pwfn_validate(hfn.get()));
      doc = {{"h", doc}, {"verify", {{"total_and_disjoint", true}}}};
    }
    r.text = doc.dump(2) + "\n";
    return r;
  }

  Source parse_set() {
    pa_source* s = nullptr;
    check(pa_source_parse(set.c_str(), &s));
    return Source(s);
  }

  Report run_sparse_density() {
    Source src = parse_set();
    char* d = nullptr;
    check(pa_source_describe(src.get(), &d));
    return sparse_density_report(src.get(), take(d));
  }

  Report run_ap_runs() {
    Source src = parse_set();
    char* out = nullptr;
    check(pa_sparse_ap_runs(src.get(), h_int, n_max, &out));
    json doc = take_json(out);
    if (want_csv(opt, true)) return {csv(doc["rows"], {"N", "k", "max_run", "start", "censored"}), false};
    return as_json(doc);
  }

  Report run_syndetic() {
    Source src = parse_set();
    char* out = nullptr;
    check(pa_sparse_syndetic(src.get(), h_int, b_max, &out));
    json doc = take_json(out);
    if (want_csv(opt, true)) return {csv(doc["rows"], {"b", "length", "begin", "end", "censored"}), false};
    return as_json(doc);
  }
};

/// argv for a config document {"command","parameters","format","seed"}.
std::vector<std::string> config_args(const std::string& path) {
  json cfg = json::parse(document("@" + path));
  std::vector<std::string> args{"pa"};
  if (cfg.contains("format")) {
    args.push_back("--format");
    args.push_back(cfg["format"].get<std::string>());
  }
  if (cfg.contains("seed")) {
    args.push_back("--seed");
    args.push_back(cfg["seed"].dump());
  }
  if (cfg.value("verify", false)) args.push_back("--verify");
  for (const auto& word : split(cfg.at("command").get<std::string>(), ' ')) args.push_back(word);
  if (cfg.contains("parameters")) {
    for (const auto& [key, value] : cfg["parameters"].items()) {
      if (key == "input") continue;
      if (value.is_boolean()) {
        if (value.get<bool>()) args.push_back("--" + key);
        continue;
      }
      args.push_back("--" + key);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    if (cfg["parameters"].contains("input")) args.push_back(cfg["parameters"]["input"].get<std::string>());
  }
  return args;
}

void write_report(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw Failure{"cannot write " + path};
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Failure{"cannot write " + path};
}

/// Replaces `--config FILE` by the arguments the file describes.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    else continue;
    std::vector<std::string> out = config_args(path);
    std::vector<std::string> rest(args.begin() + 1, args.begin() + i);
    rest.insert(rest.end(), args.begin() + i + (args[i] == "--config" ? 2 : 1), args.end());
    out.insert(out.begin() + 1, rest.begin(), rest.end());
    return out;
  }
  return args;
}

int run(std::vector<std::string> args) {
  try {
    args = expand_config(args);
  } catch (const std::exception& e) {
    std::cerr << "pa: bad config: " << e.what() << "\n";
    return 2;
  } catch (const Failure& f) {
    std::cerr << "pa: bad config: " << f.message << "\n";
    return 2;
  }
  Cli cli;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    cli.app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    std::cout << cli.app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << cli.app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "pa: " << e.what() << "\n\n" << cli.app.help();
    return 2;
  }
  try {
    Report r = cli.action();
    write_report(r.text, cli.opt.output);
    if (r.verify_failed) {
      std::cerr << "pa: verification found mismatches\n";
      return 1;
    }
    return 0;
  } catch (const Failure& f) {
    std::cerr << "pa: " << f.message << "\n";
    return 1;
  } catch (const CLI::ParseError& e) {
    std::cerr << "pa: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pa: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args);
}
