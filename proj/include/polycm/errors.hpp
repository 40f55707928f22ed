#pragma once

#include <stdexcept>
#include <string>

namespace polycm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (x <= 0, negative order, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An evaluation could not reach the requested error budget. Carries the best
/// bound that was achieved.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_bound)
      : Error(what), best_bound_(best_bound) {}
  double best_bound() const noexcept { return best_bound_; }

 private:
  double best_bound_;
};

/// Request exceeds a configured capability (e.g. derivative order cap).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Result not representable in double precision.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Witness search ran out of budget without certifying a witness.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

/// Numeric evidence failed to support any classification verdict.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace polycm
