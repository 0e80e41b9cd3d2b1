#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypfrac::gyro {

struct PropertyResult {
  std::string name;
  int cases = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool holds() const { return max_residual <= tol; }
};

struct SuiteOptions {
  int cases = 1000;
  std::uint64_t seed = 42;
  double t = 2.0;
  double max_fraction = 0.95;      // |y| <= max_fraction t for regular cases
  double boundary_fraction = 0.99; // |y| for the near-boundary cancellation cases
  double tol = 1e-10;
  double boundary_tol = 1e-9;
};

// Residuals are measured relative to t for points and to the magnitude of the compared value otherwise.
std::vector<PropertyResult> algebra_suite(const SuiteOptions& opt);

// Analytic boxminus_jacobian against a central-difference determinant of cosub(., y).
PropertyResult jacobian_suite(int pairs, std::uint64_t seed, double t = 2.0, double tol = 1e-6);

} // namespace hypfrac::gyro
