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

#include "pa/cells.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "pa/compiled.hpp"
#include "pa/error.hpp"
#include "pa/nnf.hpp"
#include "pa/parallel.hpp"
#include "pa/qe.hpp"

namespace pa::cells {

namespace {

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  std::string name = base;
  for (int k = 1; taken.count(name); ++k) name = base + "_" + std::to_string(k);
  taken.insert(name);
  return name;
}

Formula closed(Formula f, const std::vector<std::string>& vars) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::exists(*it, f);
  return f;
}

bool satisfiable(const Formula& f, const std::vector<std::string>& vars) {
  Formula s = qe::simplify(f);
  if (s.is_false_constant()) return false;
  if (s.is_true_constant()) return true;
  return qe::decide_sentence(closed(s, vars));
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

enum class Cmp { Le, Lt, Eq };

/// a(.) cmp b(.), as a disjunction over pairs of pieces.
Formula compare(const PWLinearFn& a, const PWLinearFn& b, Cmp op) {
  std::vector<Formula> parts;
  for (const auto& p : a.pieces()) {
    for (const auto& q : b.pieces()) {
      Term lhs = p.body * q.divisor;
      Term rhs = q.body * p.divisor;
      Formula rel = op == Cmp::Le   ? Formula::less_eq(lhs, rhs)
                    : op == Cmp::Lt ? Formula::less(lhs, rhs)
                                    : Formula::eq(lhs, rhs);
      parts.push_back(Formula::all_of({p.guard, q.guard, rel}));
    }
  }
  return Formula::any_of(parts);
}

/// psi_{k,N}(a/da, b/db) for exact quotients.
Formula psi_scaled(const Term& a, const BigInt& da, const Term& b, const BigInt& db,
                   const BigInt& k, const BigInt& n) {
  std::vector<Formula> parts;
  for (BigInt j = 0; j < n; ++j) {
    Term shifted = a + Term(j * da);
    parts.push_back(Formula::conjunction(Formula::less_eq(shifted * db, b * da),
                                         Formula::cong(shifted, k * da, n * da)));
  }
  return Formula::any_of(parts);
}

Formula psi_fn(const PWLinearFn& f, const PWLinearFn& g, const BigInt& k, const BigInt& n) {
  std::vector<Formula> parts;
  for (const auto& p : f.pieces())
    for (const auto& q : g.pieces())
      parts.push_back(Formula::all_of(
          {p.guard, q.guard, psi_scaled(p.body, p.divisor, q.body, q.divisor, k, n)}));
  return Formula::any_of(parts);
}

PWLinearFn minus_one(const PWLinearFn& f) {
  std::vector<LinearPiece> pieces;
  for (const auto& p : f.pieces()) pieces.push_back({p.guard, p.body - Term(p.divisor), p.divisor});
  return PWLinearFn(f.variables(), std::move(pieces));
}

void check_names(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw DomainError(std::string("duplicate ") + what + " variable");
}

}  // namespace

WeakCell::WeakCell(std::vector<std::string> vars, std::string t, Formula base,
                   std::optional<PWLinearFn> lower, std::optional<PWLinearFn> upper,
                   BigInt residue, BigInt modulus)
    : vars_(std::move(vars)),
      t_(std::move(t)),
      base_(std::move(base)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      residue_(std::move(residue)),
      modulus_(std::move(modulus)) {
  check_names(vars_, "cell");
  std::set<std::string> known(vars_.begin(), vars_.end());
  if (known.count(t_)) throw DomainError("cell coordinate '" + t_ + "' listed twice");
  if (modulus_ < 1) throw DomainError("cell modulus must be positive");
  residue_ = mod_floor(residue_, modulus_);
  if (!base_.is_quantifier_free()) throw DomainError("cell base must be quantifier-free");
  for (const auto& v : base_.free_variables())
    if (!known.count(v)) throw DomainError("cell base mentions unknown variable '" + v + "'");
  for (auto* bound : {&lower_, &upper_}) {
    if (!*bound) continue;
    for (const auto& v : (*bound)->variables())
      if (!known.count(v)) throw DomainError("cell bound mentions unknown variable '" + v + "'");
    *bound = (*bound)->widened(vars_);
  }
}

WeakCell WeakCell::empty(std::vector<std::string> vars, std::string t) {
  return WeakCell(std::move(vars), std::move(t), Formula::truth(false), std::nullopt, std::nullopt,
                  0, 1);
}

std::vector<std::string> WeakCell::all_variables() const {
  auto out = vars_;
  out.push_back(t_);
  return out;
}

int WeakCell::type() const {
  if (lower_ && upper_) return 4;
  if (upper_) return 3;
  if (lower_) return 2;
  return 1;
}

Formula WeakCell::to_formula() const {
  Term t = Term::variable(t_);
  std::vector<Formula> parts{base_};
  if (lower_) parts.push_back(lower_->less_eq(t));
  if (upper_) parts.push_back(upper_->greater_eq(t));
  if (modulus_ > 1) parts.push_back(Formula::cong(t, residue_, modulus_));
  return Formula::all_of(parts);
}

bool WeakCell::contains(const Assignment& point) const {
  return eval_formula(to_formula(), point);
}

WeakCell WeakCell::renamed(const std::map<std::string, std::string>& names) const {
  auto rename = [&](const std::string& v) {
    auto it = names.find(v);
    return it == names.end() ? v : it->second;
  };
  std::vector<std::string> vars;
  for (const auto& v : vars_) vars.push_back(rename(v));
  std::optional<PWLinearFn> lo, hi;
  if (lower_) lo = lower_->renamed(names);
  if (upper_) hi = upper_->renamed(names);
  return WeakCell(std::move(vars), rename(t_), base_.renamed(names), std::move(lo), std::move(hi),
                  residue_, modulus_);
}

void FiberFamily::validate() const {
  if (labels.size() != members.size())
    throw DomainError("family has " + std::to_string(labels.size()) + " labels but " +
                      std::to_string(members.size()) + " member sets");
  for (const auto& set : members)
    for (const auto& u : set)
      if (u.size() != arity)
        throw DomainError("family tuple of length " + std::to_string(u.size()) +
                          ", expected " + std::to_string(arity));
}

Formula FamilyExpr::kernel_formula() const {
  return has_cell_kernel() ? cell().to_formula() : std::get<Formula>(kernel);
}

void FamilyExpr::validate() const {
  auto all = concat(fiber_vars, point_vars);
  check_names(all, "expression");
  family.validate();
  if (family.arity != fiber_vars.size())
    throw DomainError("family arity " + std::to_string(family.arity) + " does not match " +
                      std::to_string(fiber_vars.size()) + " fiber variables");
  if (has_cell_kernel()) {
    if (point_vars.empty()) throw DomainError("cell kernel needs a t coordinate");
    std::vector<std::string> expect(all.begin(), all.end() - 1);
    if (cell().variables() != expect || cell().t() != point_vars.back())
      throw DomainError("cell coordinates do not match the expression variables");
  } else {
    const Formula& f = std::get<Formula>(kernel);
    if (!f.is_quantifier_free()) throw DomainError("kernel must be quantifier-free");
    std::set<std::string> known(all.begin(), all.end());
    for (const auto& v : f.free_variables())
      if (!known.count(v)) throw DomainError("kernel mentions unknown variable '" + v + "'");
  }
}

WeakCell diamond_cells(const WeakCell& a, const WeakCell& b, std::size_t m) {
  if (a.variables().size() != b.variables().size())
    throw DomainError("diamond operands have different dimensions");
  if (a.variables().size() < m) throw DomainError("diamond fiber arity exceeds the dimension");
  std::size_t n = a.variables().size() - m;
  std::set<std::string> taken(a.variables().begin(), a.variables().end());
  taken.insert(a.t());
  std::map<std::string, std::string> names;
  std::vector<std::string> vars(a.variables().begin(), a.variables().begin() + m);
  for (std::size_t i = 0; i < m; ++i) {
    std::string name = fresh_name(b.variables()[i], taken);
    names[b.variables()[i]] = name;
    vars.push_back(name);
  }
  for (std::size_t j = 0; j < n; ++j) {
    names[b.variables()[m + j]] = a.variables()[m + j];
    vars.push_back(a.variables()[m + j]);
  }
  names[b.t()] = a.t();
  WeakCell bb = b.renamed(names);

  BigInt g = gcd(a.modulus(), b.modulus());
  if (mod_floor(a.residue() - b.residue(), g) != 0) return WeakCell::empty(vars, a.t());
  BigInt modulus = lcm(a.modulus(), b.modulus());
  BigInt residue = a.residue();
  while (mod_floor(residue - b.residue(), b.modulus()) != 0) residue += a.modulus();

  auto widen = [&](const std::optional<PWLinearFn>& f) -> std::optional<PWLinearFn> {
    if (!f) return std::nullopt;
    return f->widened(vars);
  };
  auto merge = [&](const std::optional<PWLinearFn>& x, const std::optional<PWLinearFn>& y,
                   bool take_max) -> std::optional<PWLinearFn> {
    auto wx = widen(x), wy = widen(y);
    if (!wx) return wy;
    if (!wy) return wx;
    return take_max ? pw_max(*wx, *wy) : pw_min(*wx, *wy);
  };
  return WeakCell(vars, a.t(), Formula::conjunction(a.base(), bb.base()),
                  merge(a.lower(), bb.lower(), true), merge(a.upper(), bb.upper(), false),
                  residue, modulus);
}

std::array<FamilyExpr, 3> technical_union_decompose(const std::vector<WeakCell>& cells,
                                                    std::size_t m, const FiberFamily& family) {
  if (cells.size() < 2) throw DomainError("technical union needs at least two cells");
  for (const auto& c : cells)
    if (c.variables() != cells[0].variables() || c.t() != cells[0].t())
      throw DomainError("cells have different coordinates");
  if (cells[0].variables().size() < m) throw DomainError("fiber arity exceeds the dimension");
  family.validate();
  if (family.arity != m) throw DomainError("family arity does not match the fiber arity");

  const auto& vars = cells[0].variables();
  std::vector<std::string> fiber(vars.begin(), vars.begin() + m);
  std::vector<std::string> point(vars.begin() + m, vars.end());
  point.push_back(cells[0].t());
  const WeakCell& last = cells.back();

  std::vector<Formula> head;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) head.push_back(cells[i].to_formula());
  FamilyExpr g1{fiber, point, Formula::any_of(head), family};
  FamilyExpr g2{fiber, point, last, family};

  std::vector<Formula> diamonds;
  std::vector<std::string> dvars;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    WeakCell d = diamond_cells(cells[i], last, m);
    dvars = d.variables();
    diamonds.push_back(d.to_formula());
  }
  FiberFamily parts;
  parts.arity = 2 * m;
  for (std::size_t a = 0; a < family.size(); ++a) {
    const auto& set = family.members[a];
    if (set.size() > 20) throw LimitError("index set with more than 20 tuples");
    std::uint64_t full = (std::uint64_t{1} << set.size()) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      std::vector<Tuple> pairs;
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        for (std::size_t j = 0; j < set.size(); ++j) {
          if (mask >> j & 1) continue;
          Tuple uv = set[i];
          uv.insert(uv.end(), set[j].begin(), set[j].end());
          pairs.push_back(std::move(uv));
        }
      }
      parts.labels.push_back(family.labels[a] + "|" + std::to_string(mask));
      parts.members.push_back(std::move(pairs));
    }
  }
  std::vector<std::string> dfiber(dvars.begin(), dvars.begin() + 2 * m);
  FamilyExpr g3{dfiber, point, Formula::any_of(diamonds), std::move(parts)};
  return {std::move(g1), std::move(g2), std::move(g3)};
}

std::vector<WeakCell> decompose_to_weak_cells(const Formula& x,
                                              const std::vector<std::string>& vars) {
  if (vars.empty()) throw DomainError("decomposition needs at least one coordinate");
  check_names(vars, "cell");
  std::set<std::string> known(vars.begin(), vars.end());
  for (const auto& v : x.free_variables())
    if (!known.count(v)) throw DomainError("formula mentions unknown variable '" + v + "'");
  Formula qf = x.is_quantifier_free() ? x : qe::cooper_eliminate(x);
  nnf::Nnf body = nnf::from_formula(qe::simplify(qf));

  const std::string t = vars.back();
  std::vector<std::string> xs(vars.begin(), vars.end() - 1);

  // a t + s < 0 reads t < ceil(-s/a) for a > 0 and t >= floor(s/|a|) + 1 for a < 0.
  auto make_threshold = [&](const nnf::Literal& lit) {
    BigInt a = lit.term.coefficient(t);
    Term s = lit.term.without(t);
    BigInt b = a > 0 ? a : BigInt(-a);
    std::vector<LinearPiece> pieces;
    for (BigInt r = 0; r < b; ++r) {
      Formula guard = b == 1 ? Formula::truth(true) : Formula::cong(s, r, b);
      Term value = a > 0 ? Term(r) - s : s - Term(r) + Term(b);
      pieces.push_back({guard, value, b});
    }
    return PWLinearFn(xs, std::move(pieces));
  };
  // t >= theta_i, one per distinct threshold.
  std::vector<PWLinearFn> thresholds;
  std::map<std::string, std::size_t> threshold_index;
  BigInt period = 1;
  std::function<void(const nnf::Nnf&)> collect = [&](const nnf::Nnf& f) {
    if (f.kind() == nnf::Nnf::Kind::And || f.kind() == nnf::Nnf::Kind::Or) {
      for (const auto& p : f.parts()) collect(p);
      return;
    }
    if (f.kind() != nnf::Nnf::Kind::Lit || !f.lit().term.mentions(t)) return;
    const auto& lit = f.lit();
    if (lit.kind != nnf::Literal::Kind::Lt) {
      period = lcm(period, lit.modulus);
      return;
    }
    PWLinearFn theta = make_threshold(lit);
    std::string key = theta.to_string();
    if (!threshold_index.count(key)) {
      threshold_index[key] = thresholds.size();
      thresholds.push_back(std::move(theta));
    }
  };
  collect(body);

  auto threshold_of = [&](const nnf::Literal& lit) {
    return threshold_index.at(make_threshold(lit).to_string());
  };

  const std::size_t k = thresholds.size();
  std::vector<std::vector<Formula>> le(k, std::vector<Formula>(k, Formula::truth(true)));
  std::vector<std::vector<Formula>> lt(k, std::vector<Formula>(k, Formula::truth(false)));
  std::vector<std::vector<Formula>> eq(k, std::vector<Formula>(k, Formula::truth(true)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      le[i][j] = compare(thresholds[i], thresholds[j], Cmp::Le);
      lt[i][j] = compare(thresholds[i], thresholds[j], Cmp::Lt);
      eq[i][j] = compare(thresholds[i], thresholds[j], Cmp::Eq);
    }
  }

  struct Region {
    Formula order;
    std::optional<std::size_t> start;  // interval begins at this threshold
    std::optional<PWLinearFn> lower, upper;
  };
  std::vector<Region> regions;
  if (k == 0) regions.push_back({Formula::truth(true), std::nullopt, std::nullopt, std::nullopt});
  auto canonical = [&](std::size_t i) {
    std::vector<Formula> parts;
    for (std::size_t l = 0; l < i; ++l) parts.push_back(Formula::negation(eq[l][i]));
    return Formula::all_of(parts);
  };
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Formula> below, above;
    for (std::size_t l = 0; l < k; ++l) {
      if (l == j) continue;
      below.push_back(l < j ? lt[j][l] : le[j][l]);
      above.push_back(l < j ? lt[l][j] : le[l][j]);
    }
    regions.push_back({Formula::all_of(below), std::nullopt, std::nullopt, minus_one(thresholds[j])});
    regions.push_back({Formula::all_of(above), j, thresholds[j], std::nullopt});
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      std::vector<Formula> parts{canonical(i), canonical(j), lt[i][j]};
      for (std::size_t l = 0; l < k; ++l)
        if (l != i && l != j)
          parts.push_back(Formula::negation(Formula::conjunction(lt[i][l], lt[l][j])));
      regions.push_back({Formula::all_of(parts), i, thresholds[i], minus_one(thresholds[j])});
    }
  }

  std::vector<WeakCell> out;
  for (const auto& region : regions) {
    if (!satisfiable(region.order, xs)) continue;
    for (BigInt r = 0; r < period; ++r) {
      nnf::Nnf sub = nnf::map_literals(body, [&](const nnf::Literal& lit) {
        if (!lit.term.mentions(t)) return nnf::Nnf::literal(lit);
        if (lit.kind != nnf::Literal::Kind::Lt)
          return nnf::Nnf::literal({lit.kind, lit.term.substitute(t, Term(r)), lit.modulus});
        std::size_t l = threshold_of(lit);
        nnf::Nnf above = region.start ? nnf::from_formula(le[l][*region.start])
                                      : nnf::Nnf::constant(false);
        return lit.term.coefficient(t) > 0 ? nnf::negate(above) : above;
      });
      Formula base = qe::simplify(Formula::conjunction(region.order, nnf::to_formula(sub)));
      if (!satisfiable(base, xs)) continue;
      out.emplace_back(xs, t, base, region.lower, region.upper, r, period);
    }
  }
  return out;
}

std::vector<Tuple> eval_family_expr(const FamilyExpr& e, const Window& window) {
  e.validate();
  if (window.size() != e.point_vars.size())
    throw DomainError("window has " + std::to_string(window.size()) + " ranges, expected " +
                      std::to_string(e.point_vars.size()));
  std::uint64_t total = 1;
  for (const auto& [lo, hi] : window) {
    if (hi < lo) return {};
    std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
    if (total > 100000000 / width) throw LimitError("window has more than 1e8 points");
    total *= width;
  }
  const std::size_t m = e.fiber_vars.size();
  const std::size_t n = e.point_vars.size();
  CompiledFormula kernel(e.kernel_formula(), concat(e.fiber_vars, e.point_vars));
  std::vector<std::vector<Tuple>> found(chunk_count(total));
  parallel_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::vector<std::int64_t> buf(m + n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t c = n; c-- > 0;) {
        std::uint64_t width = static_cast<std::uint64_t>(window[c].second - window[c].first) + 1;
        buf[m + c] = window[c].first + static_cast<std::int64_t>(rest % width);
        rest /= width;
      }
      bool in = false;
      for (const auto& set : e.family.members) {
        bool all = true;
        for (const auto& u : set) {
          std::copy(u.begin(), u.end(), buf.begin());
          if (!kernel(buf.data())) {
            all = false;
            break;
          }
        }
        if (all) {
          in = true;
          break;
        }
      }
      if (in) found[chunk].emplace_back(buf.begin() + m, buf.end());
    }
  });
  std::vector<Tuple> out;
  for (auto& part : found)
    for (auto& p : part) out.push_back(std::move(p));
  return out;
}

FamilyExpr family_boolean(BooleanOp op, const FamilyExpr& a, const FamilyExpr* b,
                          std::uint64_t product_cap) {
  a.validate();
  if (op == BooleanOp::Complement) {
    std::uint64_t product = 1;
    for (const auto& set : a.family.members) {
      if (set.empty()) {
        product = 0;
        break;
      }
      if (product > product_cap / set.size())
        throw LimitError("complement needs more than " + std::to_string(product_cap) +
                         " choice functions");
      product *= set.size();
    }
    FiberFamily fam;
    fam.arity = a.family.arity;
    if (product > 0) {
      std::vector<std::size_t> choice(a.family.size(), 0);
      for (std::uint64_t c = 0; c < product; ++c) {
        std::set<Tuple> chosen;
        std::string label;
        for (std::size_t i = 0; i < choice.size(); ++i) {
          chosen.insert(a.family.members[i][choice[i]]);
          label += (i ? "," : "") + std::to_string(choice[i]);
        }
        fam.labels.push_back("choice(" + label + ")");
        fam.members.emplace_back(chosen.begin(), chosen.end());
        for (std::size_t i = choice.size(); i-- > 0;) {
          if (++choice[i] < a.family.members[i].size()) break;
          choice[i] = 0;
        }
      }
    }
    Formula kernel = qe::simplify(Formula::negation(a.kernel_formula()));
    return FamilyExpr{a.fiber_vars, a.point_vars, kernel, std::move(fam)};
  }

  if (!b) throw DomainError("intersection needs two operands");
  b->validate();
  if (a.point_vars.size() != b->point_vars.size())
    throw DomainError("operands live in different dimensions");
  std::set<std::string> taken(a.fiber_vars.begin(), a.fiber_vars.end());
  taken.insert(a.point_vars.begin(), a.point_vars.end());
  std::map<std::string, std::string> names;
  std::vector<std::string> fiber = a.fiber_vars;
  for (const auto& v : b->fiber_vars) {
    names[v] = fresh_name(v, taken);
    fiber.push_back(names[v]);
  }
  for (std::size_t i = 0; i < b->point_vars.size(); ++i) names[b->point_vars[i]] = a.point_vars[i];

  FiberFamily fam;
  fam.arity = a.family.arity + b->family.arity;
  std::uint64_t size = 0;
  for (std::size_t i = 0; i < a.family.size(); ++i) {
    for (std::size_t j = 0; j < b->family.size(); ++j) {
      std::vector<Tuple> pairs;
      size += a.family.members[i].size() * b->family.members[j].size();
      if (size > product_cap)
        throw LimitError("intersection family exceeds " + std::to_string(product_cap) + " tuples");
      for (const auto& u : a.family.members[i]) {
        for (const auto& v : b->family.members[j]) {
          Tuple uv = u;
          uv.insert(uv.end(), v.begin(), v.end());
          pairs.push_back(std::move(uv));
        }
      }
      fam.labels.push_back(a.family.labels[i] + "*" + b->family.labels[j]);
      fam.members.push_back(std::move(pairs));
    }
  }
  Formula kernel = Formula::conjunction(a.kernel_formula(), b->kernel_formula().renamed(names));
  return FamilyExpr{fiber, a.point_vars, kernel, std::move(fam)};
}

Formula psi(const Term& a, const Term& b, const BigInt& k, const BigInt& n) {
  if (n < 1) throw DomainError("psi modulus must be positive");
  return psi_scaled(a, 1, b, 1, mod_floor(k, n), n);
}

FamilyExpr project_s(const FamilyExpr& e) {
  e.validate();
  if (!e.has_cell_kernel()) throw DomainError("projection needs a weak-cell kernel");
  const WeakCell& cell = e.cell();
  const std::size_t m = e.fiber_vars.size();
  std::vector<std::string> xs(e.point_vars.begin(), e.point_vars.end() - 1);
  Formula member = cell.to_formula();

  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < e.family.size(); ++a) {
    std::vector<Formula> parts;
    for (const auto& u : e.family.members[a]) {
      Assignment at;
      for (std::size_t i = 0; i < m; ++i) at[e.fiber_vars[i]] = u[i];
      parts.push_back(member.instantiate(at));
    }
    if (parts.empty() || satisfiable(Formula::all_of(parts), e.point_vars)) kept.push_back(a);
  }

  std::set<std::string> taken(e.fiber_vars.begin(), e.fiber_vars.end());
  taken.insert(e.point_vars.begin(), e.point_vars.end());
  std::map<std::string, std::string> to_v, to_w;
  std::vector<std::string> vnames, wnames;
  for (const auto& u : e.fiber_vars) {
    vnames.push_back(to_v[u] = fresh_name(u + "_v", taken));
    wnames.push_back(to_w[u] = fresh_name(u + "_w", taken));
  }

  const int type = cell.type();
  const bool use_v = type == 2 || type == 4;
  const bool use_w = type == 3 || type == 4;
  std::vector<Formula> parts{cell.base()};
  std::vector<std::string> fiber = e.fiber_vars;
  if (use_v) {
    parts.push_back(compare(*cell.lower(), cell.lower()->renamed(to_v), Cmp::Le));
    fiber.insert(fiber.end(), vnames.begin(), vnames.end());
  }
  if (use_w) {
    parts.push_back(compare(cell.upper()->renamed(to_w), *cell.upper(), Cmp::Le));
    fiber.insert(fiber.end(), wnames.begin(), wnames.end());
  }
  if (type == 4)
    parts.push_back(psi_fn(cell.lower()->renamed(to_v), cell.upper()->renamed(to_w),
                           cell.residue(), cell.modulus()));

  FiberFamily fam;
  fam.arity = fiber.size();
  for (std::size_t a : kept) {
    const auto& set = e.family.members[a];
    const std::string& label = e.family.labels[a];
    if (set.empty()) {
      fam.labels.push_back(label);
      fam.members.emplace_back();
      continue;
    }
    std::vector<std::size_t> vs{0}, ws{0};
    if (use_v) {
      vs.resize(set.size());
      for (std::size_t i = 0; i < set.size(); ++i) vs[i] = i;
    }
    if (use_w) {
      ws.resize(set.size());
      for (std::size_t i = 0; i < set.size(); ++i) ws[i] = i;
    }
    for (std::size_t v : vs) {
      for (std::size_t w : ws) {
        std::vector<Tuple> tuples;
        for (const auto& u : set) {
          Tuple row = u;
          if (use_v) row.insert(row.end(), set[v].begin(), set[v].end());
          if (use_w) row.insert(row.end(), set[w].begin(), set[w].end());
          tuples.push_back(std::move(row));
        }
        std::string name = label;
        if (use_v) name += "|v" + std::to_string(v);
        if (use_w) name += "|w" + std::to_string(w);
        fam.labels.push_back(std::move(name));
        fam.members.push_back(std::move(tuples));
      }
    }
  }
  return FamilyExpr{fiber, xs, Formula::all_of(parts), std::move(fam)};
}

PWLinearFn build_covering_h(const PWLinearFn& f, std::int64_t l, std::int64_t n,
                            const std::vector<BigInt>& e_points, const std::string& e_var) {
  if (l < 1 || n < 1) throw DomainError("run length and modulus must be positive");
  if (static_cast<std::int64_t>(e_points.size()) != l * n)
    throw DomainError("expected " + std::to_string(l * n) + " points of E, got " +
                      std::to_string(e_points.size()));
  if (std::set<BigInt>(e_points.begin(), e_points.end()).size() != e_points.size())
    throw DomainError("points of E must be distinct");
  const auto& vars = f.variables();
  if (std::find(vars.begin(), vars.end(), e_var) != vars.end())
    throw DomainError("variable '" + e_var + "' already used by f");
  auto widened = vars;
  widened.push_back(e_var);
  Term e = Term::variable(e_var);
  std::vector<LinearPiece> pieces;
  std::vector<Formula> elsewhere;
  for (std::size_t j = 0; j < e_points.size(); ++j) {
    Formula at = Formula::eq(e, Term(e_points[j]));
    elsewhere.push_back(Formula::negation(at));
    for (const auto& p : f.pieces())
      pieces.push_back({Formula::conjunction(p.guard, at),
                        p.body + Term(BigInt(static_cast<long long>(j)) * p.divisor), p.divisor});
  }
  pieces.push_back({Formula::all_of(elsewhere), Term(), 1});
  return PWLinearFn(widened, std::move(pieces));
}

}  // namespace pa::cells
