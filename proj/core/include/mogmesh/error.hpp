#pragma once

#include <stdexcept>
#include <string>

namespace mogmesh {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed scenario, unknown ids, violated preconditions,
// infeasible placement requests.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Scenario text that is not well-formed JSON.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An internal invariant of the running simulation was broken.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mogmesh
