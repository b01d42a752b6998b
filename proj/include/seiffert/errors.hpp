#pragma once

#include <stdexcept>
#include <string>

namespace seiffert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A candidate function leaves the band z/(1+z) <= f(z) <= z/(1-z).
class BandViolation : public Error {
 public:
  BandViolation(const std::string& what, double witness)
      : Error(what), witness_(witness) {}

  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

/// An iterative or adaptive numerical procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace seiffert
