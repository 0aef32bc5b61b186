// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rodeo {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// Malformed input file or descriptor. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::string field = {})
      : Error(line ? what + " (line " + std::to_string(line) +
                         (field.empty() ? "" : ", field '" + field + "'") + ")"
                   : what),
        line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

private:
  std::size_t line_;
  std::string field_;
};

// Enumeration or size bound exceeded; the caller should switch algorithm.
class LimitError : public Error {
public:
  using Error::Error;
};

// Adaptive quadrature ran out of subdivision budget.
class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

private:
  double estimate_;
  double error_bound_;
};

} // namespace rodeo
