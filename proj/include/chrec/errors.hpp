#pragma once

#include <stdexcept>
#include <string>

namespace chrec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two fields built on different grids were combined.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf found where finite samples are required.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated (out-of-range index, bad size, dt <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The time step exceeds the CFL bound while the CFL number governs stepping.
class CflViolation : public Error {
 public:
  using Error::Error;
};

/// The solver left the admissible state set (non-finite values or enstrophy blow-up).
class NumericalAbort : public Error {
 public:
  using Error::Error;
};

/// Configuration failed schema validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chrec
