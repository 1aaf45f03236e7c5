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

#ifndef PA_BIGINT_HPP
#define PA_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pa {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Floor of a / b for b != 0.
BigInt floor_div(const BigInt& a, const BigInt& b);
/// Ceiling of a / b for b != 0.
BigInt ceil_div(const BigInt& a, const BigInt& b);
/// Representative of a modulo n in [0, |n|).
BigInt mod_floor(const BigInt& a, const BigInt& n);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Natural logarithm of a positive integer, accurate for values far beyond
/// the double range.
double log_of(const BigInt& value);

bool fits_int64(const BigInt& value);
std::int64_t to_int64(const BigInt& value);

std::string to_string(const BigInt& value);
/// "p/q" with q > 0, or "p" when q == 1.
std::string to_string(const Rational& value);

}  // namespace pa

#endif  // PA_BIGINT_HPP
