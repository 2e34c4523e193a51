#pragma once

#include <stdexcept>
#include <string>

namespace maxreg {

/// Malformed input: unknown letter, missing atom assignment, bad word spec.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in a formula, acceptance string or word spec.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// The operation does not support this construct (e.g. guarded ops in loop analysis).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction exceeded its configured state or guard budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxreg
