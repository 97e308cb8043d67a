#pragma once

#include <stdexcept>
#include <string>

namespace kinetic {

/// Base class for every error raised by the kinetic library.
class KineticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad size, negative rate, ...).
class DomainError : public KineticError {
 public:
  using KineticError::KineticError;
};

/// Two objects that must share a discretization do not.
class GridMismatch : public KineticError {
 public:
  using KineticError::KineticError;
};

/// A numerical value that must be finite or nonnegative is not.
class InvalidValue : public KineticError {
 public:
  using KineticError::KineticError;
};

}  // namespace kinetic
