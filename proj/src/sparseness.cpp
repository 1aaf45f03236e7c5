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

#include "pa/sparseness.hpp"

#include <algorithm>

#include "pa/error.hpp"
#include "pa/parallel.hpp"

namespace pa::sparseness {

namespace {

constexpr std::int64_t kMaxScan = 400000000;
constexpr std::int64_t kBlock = 1 << 20;

std::int64_t magnitude(std::int64_t x) { return x < 0 ? -x : x; }

std::string trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(',', pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw DomainError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw DomainError("bad integer '" + s + "'");
  }
}

}  // namespace

MembershipSource MembershipSource::from_semilinear(semilinear::SemilinearSet1 set) {
  MembershipSource s;
  s.kind_ = Kind::Semilinear;
  s.set_ = std::move(set);
  s.text_ = "semilinear:" + s.set_.to_formula("x").to_string();
  return s;
}

MembershipSource MembershipSource::from_powers(const std::vector<BigInt>& bases) {
  powers::PowerBasis check(bases);
  MembershipSource s;
  s.kind_ = Kind::Powers;
  s.bases_ = check.bases();
  s.text_ = "powers:";
  for (std::size_t i = 0; i < s.bases_.size(); ++i)
    s.text_ += (i ? "," : "") + pa::to_string(s.bases_[i]);
  return s;
}

MembershipSource MembershipSource::from_list(std::vector<std::int64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  MembershipSource s;
  s.kind_ = Kind::List;
  s.text_ = "list:";
  for (std::size_t i = 0; i < members.size(); ++i)
    s.text_ += (i ? "," : "") + std::to_string(members[i]);
  s.members_ = std::move(members);
  return s;
}

MembershipSource MembershipSource::squarefree() {
  MembershipSource s;
  s.kind_ = Kind::Squarefree;
  s.text_ = "squarefree";
  return s;
}

MembershipSource MembershipSource::from_formula(const Formula& f) {
  MembershipSource s = from_semilinear(semilinear::semilinearize_1d(f));
  s.text_ = "formula:" + f.to_string();
  return s;
}

MembershipSource MembershipSource::parse(std::string_view spec) {
  std::string text = trim(spec);
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "squarefree" && colon == std::string::npos) return squarefree();
  if (head == "powers") {
    std::vector<BigInt> bases;
    for (const auto& b : split_commas(rest)) bases.push_back(parse_int(b));
    return from_powers(bases);
  }
  if (head == "list") {
    std::vector<std::int64_t> members;
    if (!trim(rest).empty())
      for (const auto& m : split_commas(rest)) members.push_back(parse_int(m));
    return from_list(std::move(members));
  }
  if (head == "formula" || head == "semilinear") return from_formula(parse_formula(rest));
  throw DomainError("unknown set spec '" + text +
                    "' (expected squarefree, powers:..., list:..., formula:...)");
}

std::string MembershipSource::describe() const { return text_; }

bool MembershipSource::contains(std::int64_t x) const { return window(x, x)[0] != 0; }

std::vector<std::uint8_t> MembershipSource::window(std::int64_t lo, std::int64_t hi) const {
  if (hi < lo) return {};
  if (hi - lo >= kMaxScan) throw LimitError("scan window too large");
  std::vector<std::uint8_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
  switch (kind_) {
    case Kind::Semilinear:
      for (std::int64_t x = lo; x <= hi; ++x) out[x - lo] = set_.contains(x);
      break;
    case Kind::List: {
      auto it = std::lower_bound(members_.begin(), members_.end(), lo);
      for (; it != members_.end() && *it <= hi; ++it) out[*it - lo] = 1;
      break;
    }
    case Kind::Powers: {
      if (hi < 1) break;
      powers::PowerBasis basis(bases_);
      for (const auto& e : basis.elements_up_to(hi)) {
        std::int64_t v = to_int64(e);
        if (v >= lo) out[v - lo] = 1;
      }
      break;
    }
    case Kind::Squarefree: {
      std::fill(out.begin(), out.end(), 1);
      if (lo <= 0 && 0 <= hi) out[-lo] = 0;
      std::int64_t top = std::max(magnitude(lo), magnitude(hi));
      for (std::int64_t d = 2; d * d <= top; ++d) {
        std::int64_t q = d * d;
        for (std::int64_t x = ceil_div(BigInt(lo), q).convert_to<std::int64_t>() * q; x <= hi; x += q)
          out[x - lo] = 0;
      }
      break;
    }
  }
  return out;
}

std::vector<bool> squarefree_up_to(std::int64_t limit) {
  if (limit < 1) throw DomainError("sieve limit must be at least 1");
  if (limit > kMaxScan) throw LimitError("sieve limit too large");
  std::vector<bool> sf(static_cast<std::size_t>(limit) + 1, true);
  sf[0] = false;
  for (std::int64_t d = 2; d * d <= limit; ++d)
    for (std::int64_t x = d * d; x <= limit; x += d * d) sf[x] = false;
  return sf;
}

DensityEstimate empirical_density(const MembershipSource& a,
                                  const std::vector<std::int64_t>& windows) {
  check_windows(windows);
  const std::int64_t h = windows.back();
  if (h > kMaxScan / 2) throw LimitError("window too large to scan");
  const std::size_t total = static_cast<std::size_t>(2 * h + 1);
  const std::size_t buckets = windows.size();
  std::vector<std::vector<std::int64_t>> partial(chunk_count(total),
                                                 std::vector<std::int64_t>(buckets, 0));
  parallel_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    for (std::size_t s = begin; s < end; s += kBlock) {
      std::int64_t lo = static_cast<std::int64_t>(s) - h;
      std::int64_t hi = static_cast<std::int64_t>(std::min(end, s + kBlock)) - 1 - h;
      auto bits = a.window(lo, hi);
      for (std::int64_t x = lo; x <= hi; ++x) {
        if (!bits[x - lo]) continue;
        auto b = std::lower_bound(windows.begin(), windows.end(), magnitude(x)) - windows.begin();
        ++partial[chunk][b];
      }
    }
  });
  std::vector<std::int64_t> counts(buckets, 0);
  for (const auto& p : partial)
    for (std::size_t b = 0; b < buckets; ++b) counts[b] += p[b];
  for (std::size_t b = 1; b < buckets; ++b) counts[b] += counts[b - 1];
  return make_estimate(windows, counts);
}

std::int64_t APRunReport::longest() const {
  std::int64_t best = 0;
  for (const auto& r : runs) best = std::max(best, r.max_run);
  return best;
}

APRunReport ap_run_analysis(const MembershipSource& a, std::int64_t h, std::int64_t n_max) {
  if (n_max < 1) throw DomainError("N_max must be at least 1");
  if (h < 0) throw DomainError("window must be nonnegative");
  if (h > kMaxScan / 2) throw LimitError("window too large to scan");
  auto bits = a.window(-h, h);
  APRunReport report;
  report.h = h;
  for (std::int64_t n = 1; n <= n_max; ++n)
    for (std::int64_t k = 0; k < n; ++k) report.runs.push_back({n, k, 0, 0, false});
  parallel_chunks(report.runs.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      APRun& r = report.runs[i];
      std::int64_t first = -h + mod_floor(BigInt(r.residue + h), BigInt(r.modulus)).convert_to<std::int64_t>();
      if (first > h) continue;
      std::int64_t last = first + (h - first) / r.modulus * r.modulus;
      std::int64_t run = 0, run_start = first;
      for (std::int64_t t = first; t <= last + r.modulus; t += r.modulus) {
        if (t <= last && bits[t + h]) {
          if (run++ == 0) run_start = t;
          continue;
        }
        if (run > 0) {
          bool edge = run_start == first || t - r.modulus == last;
          if (run > r.max_run) {
            r.max_run = run;
            r.start = run_start;
            r.censored = edge;
          } else if (run == r.max_run) {
            r.censored = r.censored || edge;
          }
        }
        run = 0;
      }
    }
  });
  return report;
}

SyndeticReport piecewise_syndetic_window(const MembershipSource& a, std::int64_t h, std::int64_t b) {
  if (b < 0) throw DomainError("gap bound must be nonnegative");
  if (h < 0) throw DomainError("window must be nonnegative");
  if (h + b > kMaxScan / 2) throw LimitError("window too large to scan");
  auto bits = a.window(-h - b, h);
  SyndeticReport report;
  report.gap = b;
  std::int64_t last_member = -h - b - 1;  // no member seen yet
  for (std::int64_t y = -h - b; y < -h; ++y)
    if (bits[y + h + b]) last_member = y;
  std::int64_t run = 0, run_start = -h;
  for (std::int64_t y = -h; y <= h + 1; ++y) {
    bool covered = false;
    if (y <= h) {
      if (bits[y + h + b]) last_member = y;
      covered = y - last_member <= b;
    }
    if (covered) {
      if (run++ == 0) run_start = y;
      continue;
    }
    if (run > report.length) {
      report.length = run;
      report.begin = run_start;
      report.end = run_start + run - 1;
      report.censored = run_start == -h || report.end == h;
    }
    run = 0;
  }
  return report;
}

}  // namespace pa::sparseness
