#pragma once

#include <cmath>

namespace hypfrac::specfun {

// Modified Bessel function of the second kind. Even in nu; x > 0.
double bessel_k(double nu, double x);
double log_bessel_k(double nu, double x);
double bessel_k_scaled(double nu, double x); // e^x K_nu(x)

// Modified Bessel function of the first kind. Throws OverflowError when
// the result exceeds double range; bessel_i_scaled covers every x.
double bessel_i(double nu, double x);
double bessel_i_scaled(double nu, double x); // e^{-x} I_nu(x)
double log_bessel_i(double nu, double x);    // requires I_nu(x) > 0

// Modified Struve function, 0 < x <= 30.
double struve_l(double nu, double x);

// Elementary forms at half-integer order n + 1/2.
double bessel_i_half(int n, double x); // n in {-1, 0, 1, 2}
double bessel_k_half(int n, double x); // n >= 0

// Antiderivatives of rho^{k-nu} K_{-nu} sinh, rho^{k-nu} K_{-nu} cosh and
// rho^{2k-nu} K_{-nu}. Orders that zero a denominator or hit a gamma pole
// throw DomainError.
double s_integral(int k, double nu, double rho);
double c_integral(int k, double nu, double rho);
double l_integral(int two_k, double nu, double rho);

struct RatioBoundsReport {
  bool i_checked = false;
  bool i_holds = true;
  double i_ratio = 0.0, i_bound = 0.0;
  bool k_checked = false;
  bool k_holds = true;
  double k_ratio = 0.0, k_bound = 0.0;
  bool holds() const { return i_holds && k_holds; }
};

// I_{nu+1/2}/I_{nu-1/2} < x/(sqrt(x^2+nu^2)+nu) for nu >= 0 and
// K_nu/K_{nu+1} <= x/(sqrt(x^2+(nu-1/2)^2)+nu+1/2) for nu >= 1/2.
RatioBoundsReport ratio_bounds_check(double nu, double x);

// Central difference with one Richardson level, h = max(1e-5, 1e-5 x).
template <class F>
double numeric_derivative(F&& f, double x) {
  const double h = std::max(1e-5, 1e-5 * std::abs(x));
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

} // namespace hypfrac::specfun
