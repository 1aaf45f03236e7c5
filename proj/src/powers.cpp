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

#include "pa/powers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pa/error.hpp"
#include "pa/heights.hpp"
#include "pa/parallel.hpp"

namespace pa::powers {

namespace mp = boost::multiprecision;

PowerBasis::PowerBasis(std::vector<BigInt> bases, unsigned exponent_cap)
    : bases_(std::move(bases)), exponent_cap_(exponent_cap) {
  if (bases_.empty()) throw DomainError("power basis is empty");
  for (const auto& a : bases_)
    if (a <= 1) throw DomainError("bases must be > 1, got " + to_string(a));
}

std::vector<BigInt> PowerBasis::elements(unsigned cap) const {
  std::set<BigInt> out;
  for (const auto& a : bases_) {
    BigInt p = 1;
    for (unsigned e = 0; e <= cap; ++e, p *= a) out.insert(p);
  }
  return {out.begin(), out.end()};
}

std::vector<BigInt> PowerBasis::elements_up_to(const BigInt& bound) const {
  std::set<BigInt> out;
  for (const auto& a : bases_)
    for (BigInt p = 1; p <= bound; p *= a) out.insert(p);
  return {out.begin(), out.end()};
}

bool PowerBasis::contains(const BigInt& value) const {
  if (value < 1) return false;
  for (const auto& a : bases_) {
    BigInt v = value;
    while (v % a == 0) v /= a;
    if (v == 1) return true;
  }
  return false;
}

void PowerSumInstance::validate() const {
  if (k.size() != basis.bases().size())
    throw DomainError("number of coefficients must match number of bases");
  for (const auto& ki : k)
    if (ki == 0) throw DomainError("coefficients must be nonzero");
}

BigInt PowerSumInstance::common_denominator() const {
  BigInt b = 1;
  for (const auto& ki : k) b = lcm(b, mp::denominator(ki));
  return b;
}

namespace {

std::vector<BigInt> integer_coefficients(const PowerSumInstance& inst, const BigInt& b) {
  std::vector<BigInt> out;
  for (const auto& ki : inst.k) out.push_back(mp::numerator(ki) * (b / mp::denominator(ki)));
  return out;
}

// Largest e <= ceiling + 1 with scale * a^e <= limit, or -1.
int largest_exponent(const BigInt& scale, const BigInt& a, const BigInt& limit, int ceiling) {
  if (scale > limit) return -1;
  int e = 0;
  BigInt v = scale;
  while (e <= ceiling) {
    v *= a;
    if (v > limit) break;
    ++e;
  }
  return e;
}

}  // namespace

std::vector<int> exponent_caps(const PowerSumInstance& inst, const BigInt& h,
                               bool& possibly_incomplete) {
  inst.validate();
  possibly_incomplete = false;
  const BigInt b = inst.common_denominator();
  const std::vector<BigInt> K = integer_coefficients(inst, b);
  const auto& a = inst.basis.bases();
  const int ceiling = static_cast<int>(inst.basis.exponent_cap());
  const std::size_t n = K.size();
  const BigInt bh = b * h;

  bool all_positive = std::all_of(K.begin(), K.end(), [](const BigInt& v) { return v > 0; });
  bool all_negative = std::all_of(K.begin(), K.end(), [](const BigInt& v) { return v < 0; });
  std::vector<int> caps(n, 0);
  if (all_positive || all_negative) {
    BigInt total = 0;
    for (const auto& v : K) total += abs(v);
    for (std::size_t i = 0; i < n; ++i) {
      BigInt room = bh - (total - abs(K[i]));
      caps[i] = largest_exponent(abs(K[i]), a[i], room, ceiling);
      if (caps[i] > ceiling) {
        caps[i] = ceiling;
        possibly_incomplete = true;
      }
    }
    if (std::any_of(caps.begin(), caps.end(), [](int c) { return c < 0; }))
      std::fill(caps.begin(), caps.end(), -1);
    return caps;
  }

  // Mixed signs: cancellation admits no elementary exponent bound, so the
  // search runs to the ceiling.
  possibly_incomplete = true;
  std::fill(caps.begin(), caps.end(), ceiling);
  return caps;
}

std::vector<PowerSumSolution> enumerate_solutions(const PowerSumInstance& inst, const BigInt& h,
                                                  const std::vector<int>& caps) {
  inst.validate();
  const std::size_t n = inst.k.size();
  if (caps.size() != n) throw DomainError("one cap per base required");
  if (std::any_of(caps.begin(), caps.end(), [](int c) { return c < 0; })) return {};
  const BigInt b = inst.common_denominator();
  const std::vector<BigInt> K = integer_coefficients(inst, b);
  const BigInt bh = b * h;
  std::vector<std::vector<BigInt>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt p = 1;
    for (int e = 0; e <= caps[i]; ++e, p *= inst.basis.bases()[i]) powers[i].push_back(p);
  }

  const std::size_t last = n - 1;
  const BigInt& k_last = K[last];
  const auto& last_powers = powers[last];
  auto solve_last = [&](const BigInt& partial, std::vector<unsigned>& exps,
                        std::vector<PowerSumSolution>& out) {
    BigInt lo, hi;
    if (k_last > 0) {
      lo = ceil_div(-bh - partial, k_last);
      hi = floor_div(bh - partial, k_last);
    } else {
      lo = ceil_div(partial - bh, -k_last);
      hi = floor_div(partial + bh, -k_last);
    }
    auto first = std::lower_bound(last_powers.begin(), last_powers.end(), lo);
    auto stop = std::upper_bound(last_powers.begin(), last_powers.end(), hi);
    for (auto it = first; it < stop; ++it) {
      BigInt total = partial + k_last * *it;
      if (total % b != 0) continue;
      exps[last] = static_cast<unsigned>(it - last_powers.begin());
      out.push_back({total / b, exps});
    }
  };

  if (n == 1) {
    std::vector<unsigned> exps(1, 0);
    std::vector<PowerSumSolution> out;
    solve_last(0, exps, out);
    return out;
  }

  const std::size_t leading = static_cast<std::size_t>(caps[0]) + 1;
  std::vector<std::vector<PowerSumSolution>> parts(chunk_count(leading));
  parallel_chunks(leading, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    auto& out = parts[chunk];
    std::vector<unsigned> exps(n, 0);
    for (std::size_t e0 = begin; e0 < end; ++e0) {
      exps.assign(n, 0);
      exps[0] = static_cast<unsigned>(e0);
      while (true) {
        BigInt partial = 0;
        for (std::size_t i = 0; i < last; ++i) partial += K[i] * powers[i][exps[i]];
        solve_last(partial, exps, out);
        // Advance the middle coordinates 1..last-1, last one fastest.
        std::size_t i = last;
        while (i > 1 && static_cast<int>(exps[i - 1]) == caps[i - 1]) exps[--i] = 0;
        if (i == 1) break;
        ++exps[i - 1];
      }
    }
  });
  std::vector<PowerSumSolution> out;
  for (auto& p : parts)
    for (auto& s : p) out.push_back(std::move(s));
  return out;
}

PowerSumResult solve_power_sum(const PowerSumInstance& inst, const BigInt& h) {
  if (h < 1) throw DomainError("h must be positive");
  PowerSumResult result;
  result.caps = exponent_caps(inst, h, result.possibly_incomplete);
  std::map<BigInt, std::vector<unsigned>> first;
  for (auto& s : enumerate_solutions(inst, h, result.caps)) first.emplace(s.c, std::move(s.exponents));
  for (auto& [c, e] : first) result.solutions.push_back({c, std::move(e)});
  return result;
}

BigInt count_bound(const PowerSumInstance& inst, const BigInt& h) {
  inst.validate();
  for (const auto& a : inst.basis.bases())
    if (h <= a) throw DomainError("h must exceed every base");
  const unsigned n = static_cast<unsigned>(inst.k.size());
  const BigInt bh = inst.common_denominator() * h;
  if ((bh & (bh - 1)) == 0) {
    BigInt log2 = static_cast<unsigned>(mp::msb(bh));
    return pow(BigInt(5 * n * n) * log2, n);
  }
  using Float = mp::cpp_bin_float_100;
  Float log2 = mp::log(Float(bh)) / mp::log(Float(2));
  Float value = mp::pow(Float(5 * n * n) * log2, n);
  return mp::ceil(value).convert_to<BigInt>();
}

CountingCheck counting_bound_check(const PowerSumInstance& inst, const BigInt& h) {
  CountingCheck check;
  check.bound = count_bound(inst, h);
  const unsigned n = static_cast<unsigned>(inst.k.size());
  const BigInt limit = pow(inst.common_denominator() * h, 4 * n * n);
  for (const auto& a : inst.basis.bases()) {
    // Largest e with a^e < limit.
    int e = 0;
    BigInt p = a;
    while (p < limit) {
      p *= a;
      ++e;
    }
    check.caps.push_back(e);
  }
  Rational m = 0;
  for (const auto& ki : inst.k) m = std::max(m, Rational(abs(ki)));
  for (const auto& s : enumerate_solutions(inst, h, check.caps)) {
    if (Rational(abs(s.c)) <= m) continue;
    std::vector<BigInt> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(pow(inst.basis.bases()[i], s.exponents[i]));
    if (heights::classify_s1_s2(x, s.c, inst.k) == heights::HeightClass::S2)
      ++check.s2;
    else
      ++check.s1;
  }
  return check;
}

DensityEstimate image_density_experiment(const PowerBasis& basis, const PWLinearFn& f,
                                         const std::vector<std::int64_t>& windows,
                                         std::size_t max_values) {
  check_windows(windows);
  f.validate();
  const std::size_t M = f.arity();
  const BigInt H = windows.back();
  const std::vector<BigInt> capped = basis.elements(basis.exponent_cap());
  bool incomplete = false;
  std::vector<std::int64_t> values;
  auto compact = [&] {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() > max_values)
      throw LimitError("image exceeds " + std::to_string(max_values) + " distinct values");
  };

  for (const auto& piece : f.pieces()) {
    const auto& vars = f.variables();
    std::vector<BigInt> coeff(M);
    std::vector<std::size_t> J;
    for (std::size_t j = 0; j < M; ++j) {
      coeff[j] = piece.body.coefficient(vars[j]);
      if (coeff[j] != 0) J.push_back(j);
    }
    bool same_sign = std::all_of(J.begin(), J.end(), [&](std::size_t j) { return coeff[j] > 0; }) ||
                     std::all_of(J.begin(), J.end(), [&](std::size_t j) { return coeff[j] < 0; });
    auto guard_vars = piece.guard.free_variables();
    const BigInt& d = piece.body.constant();
    const BigInt& delta = piece.divisor;

    std::vector<std::vector<BigInt>> lists(M);
    for (std::size_t j = 0; j < M; ++j) {
      if (coeff[j] != 0 && same_sign) {
        lists[j] = basis.elements_up_to((H * delta + abs(d)) / abs(coeff[j]));
      } else {
        lists[j] = capped;
        if (coeff[j] != 0 || guard_vars.count(vars[j])) incomplete = true;
      }
    }
    const bool trivial_guard = piece.guard.is_true_constant();
    const bool has_solve = !J.empty();
    const std::size_t s = has_solve ? J.back() : M;
    std::vector<std::size_t> free_coords;
    for (std::size_t j = 0; j < M; ++j)
      if (j != s) free_coords.push_back(j);

    auto holds = [&](const std::vector<BigInt>& point) {
      if (trivial_guard) return true;
      Assignment env;
      for (std::size_t j = 0; j < M; ++j) env[vars[j]] = point[j];
      return eval_formula(piece.guard, env);
    };

    if (!has_solve) {
      BigInt total = d;
      if (total % delta != 0 || abs(total / delta) > H) continue;
      // Constant piece: contributes its value if some E-point satisfies the guard.
      std::vector<std::size_t> idx(M, 0);
      std::vector<BigInt> point(M);
      bool hit = false;
      while (!hit) {
        for (std::size_t j = 0; j < M; ++j) point[j] = lists[j][idx[j]];
        hit = holds(point);
        std::size_t j = 0;
        while (j < M && ++idx[j] == lists[j].size()) idx[j++] = 0;
        if (j == M) break;
      }
      if (hit || M == 0) values.push_back(static_cast<std::int64_t>(total / delta));
      continue;
    }

    const auto& solve_list = lists[s];
    const BigInt& cs = coeff[s];
    const std::size_t lead = free_coords.empty() ? 1 : lists[free_coords[0]].size();
    std::vector<std::vector<std::int64_t>> found(chunk_count(lead));
    parallel_chunks(lead, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      auto& out = found[chunk];
      std::vector<std::size_t> idx(free_coords.size(), 0);
      std::vector<BigInt> point(M);
      for (std::size_t first = begin; first < end; ++first) {
        std::fill(idx.begin(), idx.end(), 0);
        if (!idx.empty()) idx[0] = first;
        while (true) {
          BigInt partial = d;
          for (std::size_t q = 0; q < free_coords.size(); ++q) {
            std::size_t j = free_coords[q];
            point[j] = lists[j][idx[q]];
            partial += coeff[j] * point[j];
          }
          // cs * x_s in [-H delta - partial, H delta - partial]
          BigInt lo_num = -H * delta - partial, hi_num = H * delta - partial;
          BigInt lo = cs > 0 ? ceil_div(lo_num, cs) : ceil_div(hi_num, cs);
          BigInt hi = cs > 0 ? floor_div(hi_num, cs) : floor_div(lo_num, cs);
          auto it = std::lower_bound(solve_list.begin(), solve_list.end(), lo);
          for (; it != solve_list.end() && *it <= hi; ++it) {
            point[s] = *it;
            BigInt total = partial + cs * *it;
            if (total % delta != 0 || !holds(point)) continue;
            out.push_back(static_cast<std::int64_t>(total / delta));
          }
          std::size_t q = 1;
          while (q < idx.size() && ++idx[q] == lists[free_coords[q]].size()) idx[q++] = 0;
          if (q >= idx.size()) break;
        }
      }
    });
    for (auto& part : found) {
      values.insert(values.end(), part.begin(), part.end());
      if (values.size() > max_values) compact();
    }
  }
  compact();

  std::vector<std::int64_t> counts;
  for (auto h : windows) {
    auto lo = std::lower_bound(values.begin(), values.end(), -h);
    auto hi = std::upper_bound(values.begin(), values.end(), h);
    counts.push_back(hi - lo);
  }
  return make_estimate(windows, std::move(counts), incomplete);
}

}  // namespace pa::powers
