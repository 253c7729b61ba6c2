// Copyright 2026 The critcoupling Authors.
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

namespace crit {

enum class ErrorKind {
  domain,       // argument outside a function's domain
  diagonal,     // kernel evaluated on (or too close to) its log-singular diagonal
  config,       // inconsistent or malformed request
  validation,   // potential violates a shape invariant
  syntax,       // expression parse failure
  io,           // file could not be read or written
  format,       // table file content malformed
  divergence,   // an integral is infinite or non-positive where it must be positive
  convergence,  // iteration cap reached
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class DiagonalError : public Error {
 public:
  explicit DiagonalError(const std::string& what) : Error(ErrorKind::diagonal, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double at_x = 0.0)
      : Error(ErrorKind::validation, what), at_x_(at_x) {}
  /// Abscissa at which the violated invariant was detected (0 when not applicable).
  double at_x() const noexcept { return at_x_; }

 private:
  double at_x_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(ErrorKind::syntax, what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(ErrorKind::format, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(ErrorKind::divergence, what) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(ErrorKind::convergence, what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace crit
