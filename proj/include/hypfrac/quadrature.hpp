#pragma once

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hypfrac/errors.hpp"

namespace hypfrac {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdiv = 15;            // bisection depth for adaptive Gauss-Kronrod
  double truncation_decay = 1e-14; // relative size at which a manual truncation stops

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0) || !(truncation_decay > 0))
      throw DomainError("QuadratureConfig: tolerances must be positive");
    if (max_subdiv < 10)
      throw DomainError("QuadratureConfig: max_subdiv must be at least 10");
  }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

namespace quad {

// Accept an estimate whose reported error is within this factor of the request.
// Boost's error estimates compare successive levels and run pessimistic.
inline constexpr double kAcceptFactor = 100.0;

inline void check(const char* who, const QuadResult& q, const QuadratureConfig& cfg) {
  const double target = std::max(cfg.rel_tol * q.l1, cfg.abs_tol);
  if (!std::isfinite(q.value) || q.error > kAcceptFactor * target) {
    std::ostringstream os;
    os << who << ": quadrature did not converge (value " << q.value << ", error estimate "
       << q.error << ", target " << target << ")";
    throw NumericError(os.str(), q.value, q.error);
  }
}

namespace detail {
struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One Gauss-Kronrod 15/31 panel. Boost 1.74 reports the rule error on the reference interval
// [-1,1] without rescaling, so it is scaled here; its own recursion inherits that bug and is not used.
template <class F>
Panel gk_panel(F& f, double a, double b) {
  Panel p{a, b, 0.0, 0.0, 0.0};
  p.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  p.error *= std::abs(b - a) / 2;
  return p;
}
} // namespace detail

// Smooth integrand on a finite interval: globally adaptive Gauss-Kronrod, always bisecting the
// panel with the largest error, up to 64 * max_subdiv panels. Refinement aims at cfg; the result is
// accepted against `accept` when given (a looser tolerance for integrals nested in another rule).
template <class F>
QuadResult smooth(F&& f, double a, double b, const QuadratureConfig& cfg,
                  const QuadratureConfig* accept = nullptr) {
  QuadResult q;
  if (a == b) return q;
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gk_panel(f, a, b));
  double err = heap.top().error, l1 = heap.top().l1;
  const std::size_t max_panels = 64 * static_cast<std::size_t>(cfg.max_subdiv);
  while (err > std::max(cfg.rel_tol * l1, cfg.abs_tol) && heap.size() < max_panels) {
    const detail::Panel worst = heap.top();
    const double mid = (worst.a + worst.b) / 2;
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    heap.pop();
    const detail::Panel left = detail::gk_panel(f, worst.a, mid), right = detail::gk_panel(f, mid, worst.b);
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  while (!heap.empty()) {
    q.value += heap.top().value;
    q.error += heap.top().error;
    q.l1 += heap.top().l1;
    heap.pop();
  }
  check("gauss_kronrod", q, accept ? *accept : cfg);
  return q;
}

// Finite interval with integrable endpoint singularities.
template <class F>
QuadResult endpoint_singular(F&& f, double a, double b, const QuadratureConfig& cfg) {
  QuadResult q;
  if (a == b) return q;
  boost::math::quadrature::tanh_sinh<double> ts(static_cast<std::size_t>(cfg.max_subdiv));
  // Mapped onto [0, 1]: on very short intervals Boost's error estimate stalls at the first level.
  const double w = b - a;
  auto g = [&](double s) { return w * f(a + w * s); };
  q.value = ts.integrate(g, 0.0, 1.0, cfg.rel_tol, &q.error, &q.l1);
  q.l1 = std::abs(q.l1);
  check("tanh_sinh", q, cfg);
  return q;
}

// [a, inf) with algebraic or exponential decay.
template <class F>
QuadResult half_line(F&& f, double a, const QuadratureConfig& cfg) {
  QuadResult q;
  boost::math::quadrature::exp_sinh<double> es(static_cast<std::size_t>(cfg.max_subdiv));
  auto g = [&](double x) { return f(a + x); };
  q.value = es.integrate(g, 0.0, std::numeric_limits<double>::infinity(), cfg.rel_tol, &q.error,
                         &q.l1);
  check("exp_sinh", q, cfg);
  return q;
}

} // namespace quad
} // namespace hypfrac
