#pragma once

#include <stdexcept>
#include <string>

namespace hilfer {

/// Argument outside the mathematical domain of an operation (Gamma poles,
/// order windows, admissibility inequalities).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input that is not a domain question: grid too short, wrong
/// number of initial values, branch index out of range.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested configuration lies outside what an operation supports.
class unsupported_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hilfer
