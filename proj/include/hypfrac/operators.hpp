#pragma once

#include <functional>
#include <vector>

#include "hypfrac/errors.hpp"
#include "hypfrac/profiles.hpp"
#include "hypfrac/quadrature.hpp"

namespace hypfrac::ops {

struct EllipticityBounds {
  double lambda_lo = 1.0;
  double lambda_hi = 1.0;

  void validate() const {
    if (!(lambda_lo > 0) || !(lambda_lo <= lambda_hi))
      throw DomainError("EllipticityBounds: need 0 < lambda <= Lambda");
  }
};

// (u(d-) + u(d+) - 2 u(R0))/2 for the pair of distances given by the law of cosines.
double second_difference(const RadialProfile& u, double R0, double r, double omega1);

// The jump integrand enters through P(delta) = pos delta^+ - neg delta^-.
struct Weights {
  double pos = 1.0;
  double neg = 1.0;
};

// Pieces of int_0^inf int_{-1}^{1} P(delta) K_gamma(r) 2 pi sinh^2 r d omega1 dr.
struct NonlocalParts {
  double near = 0.0; // (0, eps): Taylor fit in r against kernel moments
  double mid = 0.0;  // [eps, r_star]: product quadrature
  double tail = 0.0; // (r_star, inf): delta is constant there
  double total = 0.0;
  double eps = 0.0;
  double r_star = 0.0;
};

NonlocalParts nonlocal_parts(const RadialProfile& u, double R0, double gamma, Weights w,
                             const QuadratureConfig& cfg);

// -(-Delta)^gamma u at a point at distance R0 from the centre of u.
double apply_fraclap(const RadialProfile& u, double R0, double gamma, const QuadratureConfig& cfg);
double pucci_plus(const RadialProfile& u, double R0, double gamma, const EllipticityBounds& b,
                  const QuadratureConfig& cfg);
double pucci_minus(const RadialProfile& u, double R0, double gamma, const EllipticityBounds& b,
                   const QuadratureConfig& cfg);

// u'' + 2 coth(R0) u' by central differences; 3 u''(0) at the origin.
double laplace_beltrami_stencil(const RadialProfile& u, double R0, double h = 1e-4);

class CalibrationError : public NumericError {
public:
  using NumericError::NumericError;
};

struct PlancherelReport {
  double physical = 0.0; // int u^2 d mu
  double spectral = 0.0; // kappa int |u^(lambda)|^2 lambda^2 d lambda
  double rel_error = 0.0;
};

// Radial spherical transform u^(lambda) = 4 pi int u(r) sin(lambda r)/lambda sinh r dr and its
// inverse kappa int m(lambda) u^(lambda) phi_lambda(r) lambda^2 d lambda. The constant kappa is
// fixed at construction from the round trip and checked at several radii.
class SphericalTransform {
public:
  static constexpr double kRoundTripTol = 1e-6;

  SphericalTransform(const RadialProfile& u, const QuadratureConfig& cfg);

  double forward(double lambda) const;
  double inverse(const std::function<double(double)>& multiplier, double r) const;
  double kappa() const { return kappa_; }
  double roundtrip_error() const { return roundtrip_error_; } // relative to max |u|
  double cutoff() const { return cutoff_; }
  PlancherelReport plancherel() const;

private:
  double raw_inverse(const std::function<double(double)>& multiplier, double r) const;

  RadialProfile u_;
  QuadratureConfig cfg_;
  std::vector<double> nodes_, weights_, values_; // Gauss-Legendre panels in lambda
  double cutoff_ = 0.0;
  double kappa_ = 0.0;
  double roundtrip_error_ = 0.0;
};

// Spectral evaluation with multiplier -(lambda^2 + 1)^gamma, gamma in (0, 1].
double multiplier_oracle(const RadialProfile& u, double R0, double gamma, const QuadratureConfig& cfg);

} // namespace hypfrac::ops
