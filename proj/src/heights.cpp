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

#include "pa/heights.hpp"

#include <algorithm>
#include <string>

#include "pa/error.hpp"

namespace pa::heights {

RationalTuple::RationalTuple(std::vector<BigInt> numerators, BigInt denominator)
    : numerators_(std::move(numerators)), denominator_(std::move(denominator)) {
  if (numerators_.empty()) throw DomainError("empty tuple");
  if (denominator_ == 0) throw DomainError("zero denominator");
  if (denominator_ < 0) {
    denominator_ = -denominator_;
    for (auto& a : numerators_) a = -a;
  }
  BigInt g = denominator_;
  for (const auto& a : numerators_) g = gcd(g, a);
  if (g > 1) {
    denominator_ /= g;
    for (auto& a : numerators_) a /= g;
  }
}

RationalTuple RationalTuple::from_rationals(const std::vector<Rational>& values) {
  BigInt b = 1;
  for (const auto& v : values) b = lcm(b, boost::multiprecision::denominator(v));
  std::vector<BigInt> a;
  for (const auto& v : values) a.push_back(boost::multiprecision::numerator(v) * (b / boost::multiprecision::denominator(v)));
  return RationalTuple(std::move(a), b);
}

RationalTuple RationalTuple::parse(std::string_view text) {
  std::vector<Rational> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(start, comma - start));
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    try {
      std::size_t slash = item.find('/');
      if (item.empty()) throw std::runtime_error("empty");
      BigInt num(item.substr(0, slash));
      BigInt den = slash == std::string::npos ? BigInt(1) : BigInt(item.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + item + "'");
      values.emplace_back(num, den);
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception&) {
      throw DomainError("malformed rational '" + item + "'");
    }
    start = comma + 1;
  }
  return from_rationals(values);
}

std::vector<Rational> RationalTuple::values() const {
  std::vector<Rational> out;
  for (const auto& a : numerators_) out.emplace_back(a, denominator_);
  return out;
}

HeightValue height_rational(const RationalTuple& x) {
  BigInt h = x.denominator();
  for (const auto& a : x.numerators()) h = std::max(h, BigInt(abs(a)));
  return {h, log_of(h)};
}

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& value) {
  std::vector<std::pair<BigInt, unsigned>> out;
  BigInt n = abs(value);
  if (n < 2) return out;
  auto take = [&](const BigInt& p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  take(2);
  const BigInt limit = 10000000;
  for (BigInt p = 3; p <= limit && p * p <= n; p += 2) take(p);
  if (n > 1) {
    if (n > limit * limit) throw LimitError("cannot factor " + to_string(value));
    out.emplace_back(n, 1);
  }
  return out;
}

HeightValue height_by_places(const RationalTuple& x) {
  Rational product = 1;
  // Non-archimedean places: only primes dividing b can contribute.
  for (const auto& [p, vb] : factorize(x.denominator())) {
    long best = 0;
    for (const auto& a : x.numerators()) {
      if (a == 0) continue;
      long va = 0;
      BigInt r = a;
      while (r % p == 0) {
        r /= p;
        ++va;
      }
      best = std::max(best, static_cast<long>(vb) - va);
    }
    product *= Rational(pow(p, static_cast<unsigned>(best)));
  }
  Rational arch = 1;
  for (const auto& v : x.values()) arch = std::max(arch, Rational(abs(v)));
  product *= arch;
  if (denominator(product) != 1) throw Error("height product is not an integer");
  BigInt h = numerator(product);
  return {h, log_of(h)};
}

BigInt subspace_count_bound(unsigned n, unsigned r, unsigned d) {
  if (n == 0 || d == 0) throw DomainError("n and d must be positive");
  BigInt result = pow(BigInt(2), 30 * n * n);
  result *= pow(BigInt(32) * n * n, r);
  result *= pow(BigInt(d), 3 * r + 2 * n);
  return result;
}

HeightClass classify_s1_s2(const std::vector<BigInt>& x, const BigInt& c,
                           const std::vector<Rational>& k) {
  if (c == 0) throw DomainError("c must be nonzero");
  if (x.size() != k.size() || x.empty()) throw DomainError("x and k must have equal positive length");
  std::vector<Rational> scaled;
  for (const auto& ki : k) scaled.push_back(ki / Rational(c));
  BigInt hk = height_rational(RationalTuple::from_rationals(scaled)).H;
  BigInt hx = height_rational(RationalTuple(x, 1)).H;
  unsigned n = static_cast<unsigned>(x.size());
  return pow(hk, 4 * n * n) <= hx ? HeightClass::S1 : HeightClass::S2;
}

}  // namespace pa::heights
