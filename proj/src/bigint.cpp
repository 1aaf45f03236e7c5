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

#include "pa/bigint.hpp"

#include <cmath>

#include "pa/error.hpp"

namespace pa {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DomainError("division by zero");
  BigInt q = a / b;  // truncates toward zero
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  return -floor_div(-a, b);
}

BigInt mod_floor(const BigInt& a, const BigInt& n) {
  BigInt m = abs(n);
  if (m == 0) throw DomainError("modulus zero");
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

double log_of(const BigInt& value) {
  if (value <= 0) throw DomainError("logarithm of a non-positive integer");
  std::size_t bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 53) return std::log(value.convert_to<double>());
  std::size_t shift = bits - 53;
  BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * std::log(2.0);
}

bool fits_int64(const BigInt& value) {
  return value >= std::numeric_limits<std::int64_t>::min() &&
         value <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t to_int64(const BigInt& value) {
  if (!fits_int64(value))
    throw LimitError("integer " + value.str() + " does not fit in 64 bits");
  return value.convert_to<std::int64_t>();
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const BigInt& den = boost::multiprecision::denominator(value);
  const BigInt& num = boost::multiprecision::numerator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace pa
