#pragma once

#include <stdexcept>
#include <string>

namespace hypfrac {

// Invalid input: outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Input is valid but outside what the numerics are built for.
class UnsupportedRange : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Quadrature or root finding failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& what, double estimate = 0.0, double error = 0.0)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

private:
  double estimate_;
  double error_;
};

// Result would not fit in a double; a scaled variant exists.
class OverflowError : public NumericError {
public:
  using NumericError::NumericError;
};

} // namespace hypfrac
