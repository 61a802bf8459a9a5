#pragma once

#include <stdexcept>
#include <string>

namespace framekit {

// Base for every error thrown by the library. The CLI maps subclasses of
// UsageError to exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// Non-finite entries, malformed files.
class InputError : public UsageError {
 public:
  using UsageError::UsageError;
};

class DimensionMismatch : public UsageError {
 public:
  using UsageError::UsageError;
};

class InvalidParameter : public UsageError {
 public:
  using UsageError::UsageError;
};

// Numerically degenerate input (e.g. an all-zero frame where an inverse is needed).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A vector that was required to lie in a span does not; carries the residual norm.
class OffSpanError : public Error {
 public:
  OffSpanError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace framekit
