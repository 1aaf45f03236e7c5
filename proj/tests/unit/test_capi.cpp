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

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pa/pa.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  pa_free_string(s);
  return out;
}

pa_formula* parse(const char* text) {
  pa_formula* f = nullptr;
  REQUIRE(pa_formula_parse(text, &f) == PA_OK);
  return f;
}

}  // namespace

TEST_CASE("status codes and last error") {
  pa_formula* f = nullptr;
  CHECK(pa_formula_parse("x <", &f) == PA_E_SYNTAX);
  CHECK(f == nullptr);
  CHECK(std::string(pa_last_error()).find("position") != std::string::npos);

  CHECK(pa_formula_parse(nullptr, &f) == PA_E_ARGUMENT);
  CHECK(pa_formula_parse("x < 1", nullptr) == PA_E_ARGUMENT);

  pa_formula* open = parse("x < 1");
  int truth = -1;
  CHECK(pa_formula_decide(open, &truth) == PA_E_DOMAIN);
  pa_formula_free(open);

  char* out = nullptr;
  CHECK(pa_powers_solve("1", "1", "10", 0, &out) == PA_E_DOMAIN);
  CHECK(out == nullptr);

  pa_source* s = nullptr;
  CHECK(pa_source_parse("primes", &s) == PA_E_DOMAIN);
  CHECK(pa_source_parse("formula:x <", &s) == PA_E_SYNTAX);

  pa_cell* c = nullptr;
  CHECK(pa_cell_from_json("{not json", &c) == PA_E_SYNTAX);
  CHECK(std::string(pa_version()).size() > 0);
}

TEST_CASE("last error is per thread") {
  std::string a, b;
  std::thread t1([&] {
    pa_formula* f = nullptr;
    pa_formula_parse("x <", &f);
    a = pa_last_error();
  });
  std::thread t2([&] {
    pa_source* s = nullptr;
    pa_source_parse("nonsense", &s);
    b = pa_last_error();
  });
  t1.join();
  t2.join();
  CHECK(a != b);
  CHECK(a.find("position") != std::string::npos);
}

TEST_CASE("formulas through the C surface") {
  pa_formula* f = parse("exists y. x = 2*y + 1");
  char* fv = nullptr;
  REQUIRE(pa_formula_free_variables(f, &fv) == PA_OK);
  CHECK(json::parse(take(fv)) == json::array({"x"}));

  pa_formula* q = nullptr;
  REQUIRE(pa_formula_eliminate(f, &q) == PA_OK);
  const char* names[] = {"x"};
  for (int64_t x = -20; x <= 20; ++x) {
    int truth = -1;
    REQUIRE(pa_formula_eval(q, 1, names, &x, &truth) == PA_OK);
    CHECK(truth == ((x % 2 + 2) % 2 == 1 ? 1 : 0));
  }
  char* text = nullptr;
  REQUIRE(pa_formula_to_string(q, &text) == PA_OK);
  CHECK(take(text).find("exists") == std::string::npos);

  pa_formula* s = parse("forall x. exists y. x = 2*y | x = 2*y + 1");
  int truth = -1;
  REQUIRE(pa_formula_decide(s, &truth) == PA_OK);
  CHECK(truth == 1);
  pa_formula_free(s);
  pa_formula_free(q);
  pa_formula_free(f);
}

TEST_CASE("semilinear sets") {
  pa_formula* f = parse("exists y. x = 3*y");
  pa_set1* s = nullptr;
  REQUIRE(pa_set1_from_formula(f, &s) == PA_OK);
  char* d = nullptr;
  REQUIRE(pa_set1_density(s, &d) == PA_OK);
  CHECK(take(d) == "1/3");
  int64_t count = 0;
  REQUIRE(pa_set1_count(s, 30, &count) == PA_OK);
  CHECK(count == 21);
  char* rep = nullptr;
  REQUIRE(pa_set1_report(s, &rep) == PA_OK);
  CHECK(json::parse(take(rep))["period"] == 3);
  pa_set1_free(s);
  pa_formula_free(f);
}

TEST_CASE("heights and power sums") {
  char* out = nullptr;
  REQUIRE(pa_height("3/4,5/4", &out) == PA_OK);
  json h = json::parse(take(out));
  CHECK(h["H"] == 5);
  CHECK(h["H_places"] == 5);

  int cls = 0;
  REQUIRE(pa_height_classify("4,8", "12", "1,1", &cls) == PA_OK);
  CHECK((cls == 1 || cls == 2));

  REQUIRE(pa_powers_solve("1", "2", "10", 0, &out) == PA_OK);
  json sol = json::parse(take(out));
  std::vector<int64_t> cs;
  for (const auto& s : sol["solutions"]) cs.push_back(s["c"].get<int64_t>());
  CHECK(cs == std::vector<int64_t>{1, 2, 4, 8});

  pa_pwfn* f = nullptr;
  REQUIRE(pa_pwfn_parse("x - y", "x,y", &f) == PA_OK);
  int64_t pt[2] = {7, 3}, v = 0;
  REQUIRE(pa_pwfn_eval(f, pt, 2, &v) == PA_OK);
  CHECK(v == 4);
  int64_t windows[] = {10};
  REQUIRE(pa_powers_image_density("2,3", f, windows, 1, &out) == PA_OK);
  json img = json::parse(take(out));
  // x - y over E = 2^N u 3^N, both coordinates in E
  std::vector<int64_t> e;
  for (int64_t p = 1; p <= 1 << 20; p *= 2) e.push_back(p);
  for (int64_t q = 3; q <= 1 << 20; q *= 3) e.push_back(q);
  int count = 0;
  for (int64_t x = -10; x <= 10; ++x) {
    bool hit = false;
    for (int64_t p : e)
      for (int64_t q : e) hit = hit || p - q == x;
    count += hit;
  }
  CHECK(img["rows"][0]["count"] == count);
  pa_pwfn_free(f);
}

TEST_CASE("cells and expressions") {
  const char* doc =
      R"({"vars":["x"],"t":"t","base":"x >= 0","lower":"x","upper":null,"residue":0,"modulus":2})";
  pa_cell* c = nullptr;
  REQUIRE(pa_cell_from_json(doc, &c) == PA_OK);
  for (int64_t x = -3; x <= 3; ++x)
    for (int64_t t = -5; t <= 5; ++t) {
      int64_t p[2] = {x, t};
      int in = -1;
      REQUIRE(pa_cell_contains(c, p, 2, &in) == PA_OK);
      CHECK(in == (x >= 0 && t >= x && t % 2 == 0 ? 1 : 0));
    }
  int64_t bad[1] = {0};
  int in = 0;
  CHECK(pa_cell_contains(c, bad, 1, &in) == PA_E_ARGUMENT);

  char* out = nullptr;
  REQUIRE(pa_cell_to_json(c, &out) == PA_OK);
  json round = json::parse(take(out));
  CHECK(round["type"] == 2);

  pa_cell* d = nullptr;
  REQUIRE(pa_cell_diamond(c, c, 1, &d) == PA_OK);
  int64_t p[3] = {1, 3, 4};
  REQUIRE(pa_cell_contains(d, p, 3, &in) == PA_OK);
  CHECK(in == 1);
  int64_t q[3] = {1, 5, 4};
  REQUIRE(pa_cell_contains(d, q, 3, &in) == PA_OK);
  CHECK(in == 0);

  std::string e = R"({"fiber_vars":[],"point_vars":["x","t"],"kernel":{"cell":)" +
                  std::string(doc) +
                  R"(},"family":{"arity":0,"indices":[{"label":"all","members":[[]]}]}})";
  pa_expr* ex = nullptr;
  REQUIRE(pa_expr_from_json(e.c_str(), &ex) == PA_OK);
  pa_expr* proj = nullptr;
  REQUIRE(pa_expr_project(ex, &proj) == PA_OK);
  int64_t lo = -4, hi = 4;
  REQUIRE(pa_expr_eval(proj, &lo, &hi, 1, &out) == PA_OK);
  CHECK(json::parse(take(out)) == json::parse("[[0],[1],[2],[3],[4]]"));
  pa_expr* comp = nullptr;
  REQUIRE(pa_expr_complement(proj, 0, &comp) == PA_OK);
  REQUIRE(pa_expr_eval(comp, &lo, &hi, 1, &out) == PA_OK);
  CHECK(json::parse(take(out)) == json::parse("[[-4],[-3],[-2],[-1]]"));

  pa_expr_free(comp);
  pa_expr_free(proj);
  pa_expr_free(ex);
  pa_cell_free(d);
  pa_cell_free(c);
}

TEST_CASE("sparseness scans") {
  pa_source* s = nullptr;
  REQUIRE(pa_source_parse("squarefree", &s) == PA_OK);
  int64_t windows[] = {100};
  char* out = nullptr;
  REQUIRE(pa_sparse_density(s, windows, 1, &out) == PA_OK);
  json d = json::parse(take(out));
  int count = 0;
  for (int64_t x = -100; x <= 100; ++x) {
    int64_t a = x < 0 ? -x : x;
    bool sf = a != 0;
    for (int64_t p = 2; p * p <= a; ++p) sf = sf && a % (p * p) != 0;
    count += sf;
  }
  CHECK(d["rows"][0]["count"] == count);

  REQUIRE(pa_sparse_ap_runs(s, 1000, 2, &out) == PA_OK);
  CHECK(json::parse(take(out))["rows"].size() == 3);
  REQUIRE(pa_sparse_syndetic(s, 1000, 1, &out) == PA_OK);
  CHECK(json::parse(take(out))["rows"].size() == 2);
  pa_source_free(s);
}
