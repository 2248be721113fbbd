#pragma once

#include <stdexcept>
#include <string>

namespace matmeans {

// Base for every numerical failure raised by the library.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

// An eigenvalue (or scalar argument) fell outside the declared domain of a function.
class DomainViolation : public NumericError {
 public:
  DomainViolation(const std::string& what, double value)
      : NumericError(what), value_(value) {}
  explicit DomainViolation(const std::string& what) : NumericError(what) {}
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

class DimensionMismatch : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularInput : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotUnital : public NumericError {
 public:
  using NumericError::NumericError;
};

class OptimizerFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

// Bad user configuration: unknown ids, malformed spec strings, knobs out of range.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace matmeans
