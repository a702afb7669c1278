#pragma once

#include <stdexcept>
#include <string>

namespace mevmix {

// Argument outside the mathematical domain of an operation (negative exponent
// argument, u outside [0,1], alpha outside (0,1], empty subset, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Vector or matrix dimensions that do not fit together.
class shape_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Run parameters that make an operation meaningless (too few samples, ...).
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation exists but not for this kind of object (sampling a derived
// M4 subcopula, M4 closed forms on a non-M4 model).
class unsupported_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed model description (bad JSON, missing keys, wrong types).
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mevmix
