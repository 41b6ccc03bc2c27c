// Copyright 2026 The dmps Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmps {

/// Base of every error raised by the library. The CLI maps the derived
/// kinds onto exit codes (input problems → 2, numerical problems → 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : InvalidInput(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

/// Request exceeds a memory guard (dense oracles, state vectors).
class ResourceError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class UnsupportedGate : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A linear combination collapsed to the zero vector, or a norm vanished.
class DegenerateState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dmps
