#pragma once

#include <stdexcept>
#include <string>

namespace hyperderiv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point, index or argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The inputs of an operation violate a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A function could not be evaluated at a point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A recurrence or table does not define a hypergroup, or a numerical
/// decomposition of it failed.
class HypergroupError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input or preset name.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperderiv
