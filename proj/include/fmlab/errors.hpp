#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fmlab {

// Base class for all domain errors raised by the library. The CLI maps
// these to exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or violated preconditions (unknown element id, mismatched
// signatures, nonempty Q where an empty Q is required, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// An enumeration or search exceeded its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Rejected formula or structure text. Carries a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fmlab
