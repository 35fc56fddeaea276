#pragma once

#include <stdexcept>

namespace chainring {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inversion of zero in a field, or of the zero polynomial.
struct DivisionByZero : Error {
  using Error::Error;
};

/// Inversion of a non-unit in a chain ring or quotient ring.
struct NotAUnit : Error {
  using Error::Error;
};

/// Parameters outside the supported family (p | n, oversized field, ...).
struct UnsupportedParameter : Error {
  using Error::Error;
};

/// Malformed input: bad digits, non-monic polynomial, parse failure, ...
struct InvalidInput : Error {
  using Error::Error;
};

/// Root lift requested for an element that is not an n-th power.
struct NotAnNthPower : Error {
  using Error::Error;
};

/// Enumeration cap exceeded.
struct TooLarge : Error {
  using Error::Error;
};

/// An ideal matched no generator template; would falsify the classification.
struct ClassificationFailure : Error {
  using Error::Error;
};

/// A post-verified algebraic identity failed; falsifies an assumed theorem.
struct ParadoxError : Error {
  using Error::Error;
};

}  // namespace chainring
