#pragma once

#include <stdexcept>

namespace strosc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected caller input: invalid physical configuration or amplitude.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an operation's arguments was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Root refinement was asked to search an interval with no sign change.
class InvalidBracket : public Error {
 public:
  using Error::Error;
};

/// A numerical process failed to reach its target (tolerance, step count).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace strosc
