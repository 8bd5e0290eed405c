#pragma once

#include <stdexcept>
#include <string>

namespace nomafd {

/// Malformed or inconsistent configuration (bad file, violated invariant on an input).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Quadrature failed to converge or a finite sum lost too many digits.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A cross-method invariant failed at run time (e.g. the lower bound exceeded the exact OP).
class InvariantViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace nomafd
