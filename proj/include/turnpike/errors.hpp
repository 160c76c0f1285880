#pragma once

#include <stdexcept>
#include <string>

namespace turnpike {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the caller's input was violated (bad parameter, bad data).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Two grids that must be congruent (same spacing, sample-aligned) are not.
class GridMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The horizon is not of the form T = 2n with n >= 1.
class InvalidHorizon : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A computation produced a singular system or non-finite values.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace turnpike
