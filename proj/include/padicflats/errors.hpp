#pragma once

#include <stdexcept>
#include <string>

namespace padicflats {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value is out of its domain (non-prime p, zero precision...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonUnitDenominator : public Error {
 public:
  using Error::Error;
};

class NotSquare : public Error {
 public:
  using Error::Error;
};

/// The determinant vanishes modulo p^m, so the Smith exponents are not
/// determined by the truncation.
class SingularAtPrecision : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured work guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace padicflats
