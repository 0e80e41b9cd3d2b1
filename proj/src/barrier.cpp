#include "hypfrac/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypfrac/errors.hpp"
#include "hypfrac/geometry.hpp"
#include "hypfrac/scale.hpp"

namespace hypfrac::ops {

void BarrierSpec::validate() const {
  if (!(delta > 0 && delta < 1)) throw DomainError("BarrierSpec: delta must lie in (0,1)");
  if (!(alpha > 0)) throw DomainError("BarrierSpec: alpha must be positive");
  if (!(kappa > 0 && kappa <= 0.25)) throw DomainError("BarrierSpec: kappa must lie in (0,1/4]");
  if (!(R > 0)) throw DomainError("BarrierSpec: R must be positive");
  if (!(gamma > 0 && gamma < 1)) throw DomainError("BarrierSpec: gamma must lie in (0,1)");
  const double log_cap = -2 * alpha * std::log(kappa * delta / 20);
  if (log_cap > std::log(std::numeric_limits<double>::max()) - 30)
    throw OverflowError("BarrierSpec: cap (kappa delta/20)^{-2 alpha} overflows", log_cap);
}

double barrier_value(const BarrierSpec& spec, double d) {
  if (!(d >= 0)) throw DomainError("barrier_value: distance must be nonnegative");
  if (d <= spec.cap_radius()) return -std::pow(spec.kappa * spec.delta / 20, -2 * spec.alpha);
  return -std::pow(d / (5 * spec.R), -2 * spec.alpha);
}

double barrier_shifted_value(const BarrierSpec& spec, double d) {
  return std::pow(0.6, -2 * spec.alpha) + barrier_value(spec, d);
}

RadialProfile barrier_profile(const BarrierSpec& spec) {
  spec.validate();
  // |v| < 1e-16 beyond 5R 10^{8/alpha}
  const double settle = 5 * spec.R * std::pow(10.0, 16 / (2 * spec.alpha));
  const double kink = spec.cap_radius();
  const double steep = 2 * spec.alpha + 2;
  return RadialProfile(
      "barrier", [spec](double d) { return barrier_value(spec, d); }, 0.0, settle, {kink}, Smoothness::C0,
      [kink, steep](double r) { return std::max(r, kink) / steep; });
}

std::vector<double> default_barrier_samples(const BarrierSpec& spec, int count) {
  if (count < 1) throw DomainError("default_barrier_samples: count must be positive");
  const double a = spec.delta * spec.R / 4, b = 5 * spec.R;
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) out.push_back(a + (b - a) * i / (count + 1));
  return out;
}

BarrierReport barrier_check(const BarrierSpec& spec, const std::vector<double>& samples,
                            const EllipticityBounds& bounds, const QuadratureConfig& cfg) {
  spec.validate();
  bounds.validate();
  if (samples.empty()) throw DomainError("barrier_check: no sample points");
  BarrierReport rep;
  rep.spec = spec;
  rep.bounds = bounds;
  const double R7 = 7 * spec.R;
  const double scale = R7 * R7 / scale::i0_closed(R7, spec.gamma);
  const double shift = bounds.lambda_hi * geometry::aux_H(R7);
  const RadialProfile v = barrier_profile(spec);
  for (double R0 : samples) {
    if (!(R0 > spec.delta * spec.R / 4 && R0 < 5 * spec.R))
      throw DomainError("barrier_check: sample radius outside (delta R/4, 5R)");
    BarrierRow row;
    row.R0 = R0;
    row.value = v(R0);
    row.pucci = pucci_plus(v, R0, spec.gamma, bounds, cfg);
    row.margin = scale * row.pucci + shift;
    rep.rows.push_back(row);
  }
  rep.worst_margin = rep.rows.front().margin;
  for (const auto& r : rep.rows) rep.worst_margin = std::max(rep.worst_margin, r.margin);
  rep.holds = rep.worst_margin <= 0;
  return rep;
}

BarrierSweep barrier_sweep(const BarrierSpec& base, const std::vector<double>& samples,
                           const EllipticityBounds& bounds, const QuadratureConfig& cfg, double alpha_cap) {
  BarrierSweep sweep;
  for (double a = 2; a <= alpha_cap; a *= 2) {
    BarrierSpec s = base;
    s.alpha = a;
    sweep.reports.push_back(barrier_check(s, samples, bounds, cfg));
  }
  // First alpha after which every report holds.
  for (std::size_t i = sweep.reports.size(); i-- > 0;) {
    if (!sweep.reports[i].holds) break;
    sweep.first_alpha = sweep.reports[i].spec.alpha;
  }
  sweep.inconclusive = !sweep.first_alpha.has_value();
  return sweep;
}

ArccosReport arccos_inequalities(double alpha, double R0, double t) {
  if (!(alpha > 0) || !(R0 > 0)) throw DomainError("arccos_inequalities: need alpha > 0 and R0 > 0");
  const double c = std::cosh(R0), s = std::sinh(R0);
  if (!(t * c > 1)) throw DomainError("arccos_inequalities: need t > 1/cosh R0");
  const double la = std::log(std::acosh(t * c)), lr = std::log(R0);
  const double H = geometry::aux_H(R0);
  const double lq = std::log((t * c - 1) * (t * c + 1));
  const double ls = std::log(s), lc = std::log(c);
  // (t - 1) / (R0^4 sinh^2 R0) without the R0^{-2 alpha} factor
  const double tail = (t - 1) / (R0 * R0) / (R0 * R0 * s * s);
  // Each row compares exp(lp) - exp(lm) with rhs_coef exp(lr_scale). The powers overflow near
  // t = 1/cosh R0 for large alpha, so all three are divided by the largest before comparing.
  // lhs is a difference of two terms that coincide at t = 1; rounding is judged against their size.
  auto decide = [](ArccosRow& r, double lp, double lm, double rhs_coef, double l_rhs) {
    const double l_abs = rhs_coef == 0 ? -std::numeric_limits<double>::infinity() : l_rhs + std::log(std::abs(rhs_coef));
    r.log_scale = std::max({lp, lm, l_abs});
    const double p = std::exp(lp - r.log_scale), m = std::exp(lm - r.log_scale);
    r.lhs = p - m;
    r.rhs = rhs_coef == 0 ? 0.0 : std::copysign(std::exp(l_abs - r.log_scale), rhs_coef);
    const double slack = 1e-12 * (p + m + std::abs(r.rhs));
    r.holds = r.lhs >= r.rhs - slack;
  };
  ArccosReport rep{alpha, R0, t, {}, {}, {}, false};
  decide(rep.first, -2 * alpha * la, -2 * alpha * lr, -2 * alpha * H * (t - 1), (-2 * alpha - 2) * lr);
  decide(rep.second, (-2 * alpha - 2) * la - lq, (-2 * alpha - 2) * lr - 2 * ls,
         -((2 * alpha + 2) + 2 * H) * H * tail, -2 * alpha * lr);
  decide(rep.third, (-2 * alpha - 1) * la + std::log(t) + lc - 1.5 * lq, (-2 * alpha - 1) * lr + lc - 3 * ls,
         -((2 * alpha + 1) * H - R0 * R0 + 3 * H * H) * H * tail, -2 * alpha * lr);
  rep.holds = rep.first.holds && rep.second.holds && rep.third.holds;
  return rep;
}

} // namespace hypfrac::ops
