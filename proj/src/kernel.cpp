#include "hypfrac/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "hypfrac/errors.hpp"
#include "hypfrac/specfun.hpp"

namespace hypfrac::kernel {

void KernelSpec::validate() const {
  if (!(gamma > 0 && gamma < 1)) throw DomainError("KernelSpec: gamma must lie in (0,1)");
  if (!(tau > 0)) throw DomainError("KernelSpec: tau must be positive");
}

double normalizing_constant(int n, double gamma) {
  if (n < 1) throw DomainError("normalizing_constant: n must be positive");
  if (!(gamma > 0 && gamma < 1)) throw DomainError("normalizing_constant: gamma must lie in (0,1)");
  // |Gamma(-gamma)| = Gamma(1-gamma)/gamma
  return std::pow(2.0, 2 * gamma) * boost::math::tgamma(n / 2.0 + gamma) * gamma /
         (std::pow(std::numbers::pi, n / 2.0) * boost::math::tgamma(1 - gamma));
}

double log_sinh(double x) {
  if (!(x > 0)) throw DomainError("log_sinh: argument must be positive");
  if (x > 20) return x - std::numbers::ln2 + std::log1p(-std::exp(-2 * x));
  if (x < 1e-4) return std::log(x) + x * x / 6;
  return std::log(std::sinh(x));
}

double log_kernel(const KernelSpec& spec, double rho) {
  spec.validate();
  if (!(rho > 0)) throw DomainError("kernel_value: rho must be positive");
  const double g = spec.gamma, tau = spec.tau;
  const double nu = 1.5 + g;
  return std::log(normalizing_constant(3, g)) - std::log(tau) - log_sinh(rho / tau) - (0.5 + g) * std::log(rho) +
         std::numbers::ln2 + specfun::log_bessel_k(nu, rho / tau) - boost::math::lgamma(nu) -
         nu * std::log(2 * tau);
}

double kernel_value(const KernelSpec& spec, double rho) { return std::exp(log_kernel(spec, rho)); }

double log_kernel_sinh2(const KernelSpec& spec, double rho) {
  spec.validate();
  if (!(rho > 0)) throw DomainError("kernel_value: rho must be positive");
  const double g = spec.gamma, tau = spec.tau;
  const double nu = 1.5 + g;
  const double x = rho / tau;
  // log sinh(x) + log K_nu(x), with e^x cancelled by hand for large x
  const double sk = (x > 20) ? -std::numbers::ln2 + std::log1p(-std::exp(-2 * x)) +
                                   std::log(specfun::bessel_k_scaled(nu, x))
                             : log_sinh(x) + specfun::log_bessel_k(nu, x);
  return std::log(normalizing_constant(3, g)) - std::log(tau) - (0.5 + g) * std::log(rho) + std::numbers::ln2 + sk -
         boost::math::lgamma(nu) - nu * std::log(2 * tau);
}

double kernel_sinh2(double gamma, double rho) { return std::exp(log_kernel_sinh2({gamma, 1.0}, rho)); }

double euclidean_limit_ratio(double gamma, double rho, double tau) {
  const double lc = std::log(normalizing_constant(3, gamma));
  return std::exp(log_kernel({gamma, tau}, rho) - lc + (3 + 2 * gamma) * std::log(rho));
}

double spectral_kernel(double lambda, double t, double rho) {
  if (!(rho > 0) || !(t > 0)) throw DomainError("spectral_kernel: rho and t must be positive");
  const double x = 2 * rho / t;
  if (x > 700) return 0.0;
  return -(2 / t) * lambda * std::sin(lambda * rho) / (4 * std::numbers::pi * std::numbers::pi * std::sinh(x));
}

namespace {

// log of 1 - sin(mu rho)/(mu sinh rho), with the mu -> 0 limit and a series near
// rho = 0 kept in log form so tiny nodes do not underflow.
double log_oscillation_factor(double mu, double rho) {
  const double m = std::abs(mu);
  if (rho * std::max(1.0, m) < 0.5) {
    // (sinh rho - sin(mu rho)/mu) / rho^3 = sum_{k>=1} rho^{2k-2} (1 - (-1)^k mu^{2k}) / (2k+1)!
    double p = 1.0 / 6, m2k = m * m, sum = 0;
    for (int k = 1; k < 30; ++k) {
      const double c = (k % 2 == 0) ? 1 - m2k : 1 + m2k;
      sum += p * c;
      if (p * (1 + m2k) < 1e-18 * std::abs(sum)) break;
      p *= rho * rho / ((2 * k + 2) * (2 * k + 3));
      m2k *= m * m;
    }
    return std::log(sum) + 3 * std::log(rho) - log_sinh(rho);
  }
  if (rho > 700) return 0.0;
  const double s = (m == 0) ? rho : std::sin(m * rho) / m;
  return std::log1p(-s / std::sinh(rho));
}

} // namespace

InvarianceResult invariance_integral_detail(double lambda, double gamma, double t, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(gamma > 0 && gamma < 1)) throw DomainError("invariance_integral: gamma must lie in (0,1)");
  if (!(t > 0)) throw DomainError("invariance_integral: t must be positive");
  const double mu = lambda * t / 2;
  const double tau = t / 2;
  const KernelSpec spec{gamma, tau};
  const double C = normalizing_constant(3, gamma);
  double min_f = std::numeric_limits<double>::infinity();
  auto log_f = [&](double lr) {
    const double rho = std::exp(lr);
    return log_oscillation_factor(mu, rho) + log_kernel_sinh2(spec, t * rho / 2);
  };
  auto record = [&](double v) {
    min_f = std::min(min_f, v);
    return v;
  };
  // The integrand behaves like c0 rho^{1-2 gamma} at 0 and c1 rho^{-1-gamma} at infinity. With
  // x = rho^{2-2 gamma} near 0 and rho = rho_c y^{-1/gamma} in the tail both end pieces are bounded,
  // which keeps tanh-sinh convergent at either end of the gamma range. Where rho leaves double range
  // the integrand is replaced by its limit. The oscillation of sin(mu rho) is left to adaptive
  // Gauss-Kronrod on [rho_a, rho_c]; beyond rho_c = 40 it is below 1e-17 of the integrand.
  const double p = 2 - 2 * gamma, nu = 1.5 + gamma;
  const double rho_a = std::min(1.0, 0.5 / std::max(1.0, std::abs(mu))), rho_c = 40;
  const double c0 = C * (1 + mu * mu) / 6 * std::pow(tau, -3 - 2 * gamma);
  const double c1 = C * std::sqrt(std::numbers::pi / 2) * std::pow(tau, -nu) / (std::tgamma(nu) * std::pow(2 * tau, nu));
  auto near = [&](double x) {
    const double lr = x > 0 ? std::log(x) / p : -std::numeric_limits<double>::infinity();
    if (lr < -700) return record(c0 / p);
    return record(std::exp(log_f(lr) + (1 - p) * lr) / p);
  };
  auto mid = [&](double rho) { return record(std::exp(log_f(std::log(rho)))); };
  auto far = [&](double y) {
    const double lr = y > 0 ? std::log(rho_c) - std::log(y) / gamma : std::numeric_limits<double>::infinity();
    if (lr > 700) return record(c1 * std::pow(rho_c, -gamma) / gamma);
    return record(std::exp(log_f(lr) + lr - std::log(y)) / gamma);
  };
  const QuadResult a = quad::endpoint_singular(near, 0.0, std::pow(rho_a, p), cfg);
  const QuadResult m = quad::smooth(mid, rho_a, rho_c, cfg);
  const QuadResult b = quad::endpoint_singular(far, 0.0, 1.0, cfg);
  const double pref = std::numbers::pi * t * t * t / 2;
  InvarianceResult r;
  r.value = pref * (a.value + m.value + b.value);
  r.error = pref * (a.error + m.error + b.error);
  r.min_integrand = min_f;
  if (min_f < 0) throw NumericError("invariance_integral: negative integrand at a node", min_f);
  return r;
}

double invariance_integral(double lambda, double gamma, double t, const QuadratureConfig& cfg) {
  return invariance_integral_detail(lambda, gamma, t, cfg).value;
}

} // namespace hypfrac::kernel
