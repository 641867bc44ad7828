#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treecomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vertex path that does not exist in the ambient tree, or a parent
/// request at the root.
class AddressError : public Error {
 public:
  using Error::Error;
};

/// Enumeration or path construction would exceed the configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A weight evaluated to a non-positive or non-finite value.
class WeightError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic domain failure while evaluating an expression
/// (division by zero, zero to a negative power, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Malformed spec text. Carries a 1-based line/column location.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Invalid arguments to an analysis (bad depth ordering, empty cutoffs...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace treecomp
