#pragma once

#include <stdexcept>
#include <string>

namespace stiefel_sr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Operands mix complex and real field modes.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// A value failed the invariant of the type it was meant to construct
/// (not skew-Hermitian, not unitary, not column-orthonormal, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the operation's domain (k out of range,
/// negative time, zero velocity where a nonzero one is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Serialized input does not follow the expected schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace stiefel_sr
