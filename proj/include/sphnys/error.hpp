#pragma once

#include <stdexcept>
#include <string>

namespace sphnys {

/// Bad input: parameter out of range, malformed file, inconsistent sizes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not deliver a trustworthy result (singular system,
/// eigen-solver failure, quadrature that did not converge).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sphnys
