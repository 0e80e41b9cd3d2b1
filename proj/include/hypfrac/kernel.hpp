#pragma once

#include "hypfrac/quadrature.hpp"

namespace hypfrac::kernel {

struct KernelSpec {
  double gamma = 0.5;
  double tau = 1.0;

  void validate() const;
};

// 2^{2 gamma} Gamma(n/2 + gamma) / (pi^{n/2} |Gamma(-gamma)|).
double normalizing_constant(int n, double gamma);

// log K_{gamma,tau}(rho); finite for every rho > 0.
double log_kernel(const KernelSpec& spec, double rho);
double kernel_value(const KernelSpec& spec, double rho);

// log(K_{gamma,tau}(rho) sinh^2(rho/tau)), stable for large rho.
double log_kernel_sinh2(const KernelSpec& spec, double rho);

// K_gamma(rho) sinh^2(rho) at tau = 1, the radial density of the jump measure up to 4 pi.
double kernel_sinh2(double gamma, double rho);

// log sinh(x) for x > 0 without overflow or cancellation.
double log_sinh(double x);

// K_{gamma,tau}(rho) / (C(3,gamma) rho^{-3-2gamma}).
double euclidean_limit_ratio(double gamma, double rho, double tau);

// -(1/(4 pi^2)) (2/t) lambda sin(lambda rho) / sinh(2 rho / t).
double spectral_kernel(double lambda, double t, double rho);

struct InvarianceResult {
  double value = 0.0;
  double error = 0.0;
  double min_integrand = 0.0; // smallest integrand value seen at a node
};

// (pi t^3/2) int_0^inf (1 - 2 sin(lambda t rho/2)/(lambda t sinh rho)) K_{gamma,t/2}(t rho/2) sinh^2 rho d rho,
// which equals (lambda^2 + 4/t^2)^gamma.
InvarianceResult invariance_integral_detail(double lambda, double gamma, double t, const QuadratureConfig& cfg);
double invariance_integral(double lambda, double gamma, double t, const QuadratureConfig& cfg);

} // namespace hypfrac::kernel
