#pragma once

#include <stdexcept>
#include <string>

namespace modlie {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible shape (matrix sizes, ambient dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the mathematical domain of an operation
/// (p = 2, singular flag matrix, chi nonzero on a Borel, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Elements or algebras that do not share a parent.
class ParentMismatch : public Error {
 public:
  using Error::Error;
};

/// A configured size guard would be exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A structure failed its own construction-time invariant check.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace modlie
