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

#ifndef PA_ERROR_HPP
#define PA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position()` is the byte offset of the offending
/// token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An argument violates an operation's precondition (arity mismatch, free
/// variables in a sentence, c = 0, duplicate points, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (product size, exponent ceiling, memory) was
/// exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace pa

#endif  // PA_ERROR_HPP
