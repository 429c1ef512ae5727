// Copyright 2026 The pauligroup Authors
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

namespace pauligroup {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count or vector length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what,
             const std::string& source = {})
      : Error((source.empty() ? std::string() : source + ": ") +
              (line ? "line " + std::to_string(line) + ": " + what : what)),
        line_(line),
        detail_(what) {}
  std::size_t line() const noexcept { return line_; }
  /// The message without source and line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// A request would exceed a hard size guard (dense matrices, statevectors).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but violates a value constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (e.g. non-commuting group).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// A term would be estimated from zero measurements.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::size_t term)
      : Error(what), term_(term) {}
  std::size_t term() const noexcept { return term_; }

 private:
  std::size_t term_;
};

}  // namespace pauligroup
