#pragma once

#include <stdexcept>
#include <string>

namespace padyn {

// Malformed or out-of-contract input (bad prime, letter out of range, parse errors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation needs more known digits than its operands carry.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive enumeration would exceed the configured table budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace padyn
