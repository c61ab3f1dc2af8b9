#pragma once

#include <stdexcept>
#include <string>

namespace kwp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested moment-type quantity is infinite for the given parameters.
class MomentDoesNotExist : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed or unusable input data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure failed to reach its stopping criteria.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace kwp
