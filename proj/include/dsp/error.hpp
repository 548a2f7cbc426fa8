#pragma once

#include <stdexcept>
#include <string>

namespace dsp {

/// Raised when an operation's precondition is violated by its input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a pipeline stage detects that an invariant it relies on does
/// not hold (for example two short odd cycles sharing a vertex).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a configured cap (oracle size, search size) is exceeded.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when a set, certificate or table file cannot be read.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dsp
