#pragma once

#include <stdexcept>
#include <string>

namespace prbg {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

struct MalformedHex : std::invalid_argument {
  explicit MalformedHex(const std::string& what) : std::invalid_argument("malformed hex: " + what) {}
};

struct InvalidModulus : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised by reductions whose input exceeds the supported bit length.
struct InputTooLarge : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A generator was asked for more output than its cap allows.
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace prbg
