#pragma once

#include <stdexcept>
#include <string>

namespace dyft {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result would not be representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// |z| or the predicted series cancellation exceeds the configured budget.
/// The caller must shrink N or raise the precision limits.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Transform size outside the desk-scale envelope for the given order.
class EnvelopeExceeded : public Error {
 public:
  using Error::Error;
};

/// Series did not meet its termination rule within max_terms.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Inputs of incompatible length, order, direction, convention or mode.
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace dyft
