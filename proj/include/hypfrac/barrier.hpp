#pragma once

#include <optional>
#include <vector>

#include "hypfrac/operators.hpp"
#include "hypfrac/profiles.hpp"
#include "hypfrac/quadrature.hpp"

namespace hypfrac::ops {

struct BarrierSpec {
  double delta = 0.5;
  double alpha = 2.0;
  double kappa = 0.25;
  double R = 1.0;
  double gamma = 0.99;

  void validate() const;
  // Radius below which the cap -(kappa delta/20)^{-2 alpha} is active.
  double cap_radius() const { return R * kappa * delta / 4; }
};

// max{-(kappa delta/20)^{-2 alpha}, -(d/5R)^{-2 alpha}} at distance d from the centre.
double barrier_value(const BarrierSpec& spec, double d);
// The barrier shifted by (3/5)^{-2 alpha}: nonnegative outside B_{3R}, nonpositive inside.
double barrier_shifted_value(const BarrierSpec& spec, double d);
RadialProfile barrier_profile(const BarrierSpec& spec);

// Ten radii evenly spaced strictly inside (delta R/4, 5R).
std::vector<double> default_barrier_samples(const BarrierSpec& spec, int count = 10);

struct BarrierRow {
  double R0 = 0.0;
  double value = 0.0;  // v(R0)
  double pucci = 0.0;  // M^+ v(R0)
  double margin = 0.0; // (7R)^2/I0(7R) M^+ v + Lambda H(7R); nonpositive is the supersolution property
};

struct BarrierReport {
  BarrierSpec spec;
  EllipticityBounds bounds;
  std::vector<BarrierRow> rows;
  double worst_margin = 0.0;
  bool holds = false;
};

BarrierReport barrier_check(const BarrierSpec& spec, const std::vector<double>& samples,
                            const EllipticityBounds& bounds, const QuadratureConfig& cfg);

struct BarrierSweep {
  std::vector<BarrierReport> reports; // one per alpha, ascending
  std::optional<double> first_alpha;  // smallest alpha from which every later report holds
  bool inconclusive = true;           // the cap was reached without a settled sign
};

// alpha = 2, 4, ..., alpha_cap (doubling) on the given base spec.
BarrierSweep barrier_sweep(const BarrierSpec& base, const std::vector<double>& samples,
                           const EllipticityBounds& bounds, const QuadratureConfig& cfg,
                           double alpha_cap = 64.0);

// Both sides of one bound, divided by exp(log_scale) so that they stay finite.
struct ArccosRow {
  double lhs = 0.0, rhs = 0.0;
  double log_scale = 0.0;
  bool holds = false;
};

struct ArccosReport {
  double alpha = 0.0, R0 = 0.0, t = 0.0;
  ArccosRow first, second, third;
  bool holds = false;
};

// Both sides of the three convexity bounds for (arccosh(t cosh R0))^{-2 alpha} and its two companions.
ArccosReport arccos_inequalities(double alpha, double R0, double t);

} // namespace hypfrac::ops
