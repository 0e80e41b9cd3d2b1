#pragma once

#include <vector>

#include "hypfrac/quadrature.hpp"

namespace hypfrac::scale {

struct ScaleValues {
  double i0 = 0.0;
  double iinf = 0.0;
  double R = 0.0;
  double gamma = 0.0;
};

// Closed forms in Bessel products at R (n = 3, tau = 1).
double i0_closed(double R, double gamma);
double iinf_closed(double R, double gamma);
ScaleValues scale_values(double R, double gamma);

// 4 pi int_0^R rho^2 K sinh^2 and 4 pi R^2 int_R^inf K sinh^2.
double i0_quadrature(double R, double gamma, const QuadratureConfig& cfg);
double iinf_quadrature(double R, double gamma, const QuadratureConfig& cfg);
// 4 pi int_0^inf min(rho^2, R^2) K sinh^2 on the mesh [0, R/2, R, 2R, inf).
double itotal_quadrature(double R, double gamma, const QuadratureConfig& cfg);

// rho0 * x with I0(x) = I0(R)/2.
double r0_solve(double R, double gamma, double rho0 = 0.25);

struct MonotonicityRow {
  double R = 0.0;
  double i0 = 0.0, iinf = 0.0;
  double ratio_2mg = 0.0;       // I0/R^{2-gamma}
  double ratio_2 = 0.0;         // I0/R^2
  double margin_2mg = 0.0;      // relative drop from the previous grid point
  double margin_2 = 0.0;
  double margin_inequality = 0.0; // ((1-gamma)/gamma) H(R) I0 - Iinf, relative to I0
};

struct MonotonicityReport {
  double gamma = 0.0;
  std::vector<MonotonicityRow> rows;
  double worst_2mg = 0.0, worst_2 = 0.0, worst_inequality = 0.0;
  bool holds = true;
};

// Checks I0/R^{2-gamma} and I0/R^2 non-increasing and Iinf <= ((1-gamma)/gamma) H(R) I0.
MonotonicityReport monotonicity_report(double gamma, const std::vector<double>& R_grid);

} // namespace hypfrac::scale
