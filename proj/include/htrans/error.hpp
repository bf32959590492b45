#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace htrans {

/// Argument outside the domain of a function, or a point outside the half-space.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Immersion with |Xu x Xv| at or below the degeneracy threshold.
class DegenerateImmersion : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Evaluation on a locus where a formula divides by zero (f' = 0, g' = 0).
class SingularLocus : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Operation called with the wrong kind of surface or invalid parameters.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed surface or run-config file.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string &what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace htrans
