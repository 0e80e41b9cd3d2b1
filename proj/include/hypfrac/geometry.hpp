#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "hypfrac/errors.hpp"
#include "hypfrac/quadrature.hpp"

namespace hypfrac::geometry {

template <class Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <class Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

// Curvature -1/tau^2; ball radius t; metric coefficient b = t*tau.
template <class Scalar = double>
struct ModelParams {
  Scalar tau = 1, t = 2, b = 2;

  static ModelParams from_tau(Scalar tau) { return {tau, 2 * tau, 2 * tau * tau}; }

  void validate() const {
    if (!(tau > 0 && t > 0 && b > 0)) throw DomainError("ModelParams: entries must be positive");
    if (std::abs(b / t - tau) > 1e-14 * tau) throw DomainError("ModelParams: b/t must equal tau");
  }
};

template <class Scalar = double>
struct HyperPoint {
  Vec4<Scalar> x;
};

template <class Scalar = double>
struct BallPoint {
  Vec3<Scalar> y;
};

template <class Scalar = double>
struct DyadicLadder {
  std::vector<Scalar> radii;
};

// Lorentzian product x0 y0 - <x', y'>.
template <class Scalar>
Scalar minkowski(const Vec4<Scalar>& p, const Vec4<Scalar>& q) {
  return p(0) * q(0) - p.template tail<3>().dot(q.template tail<3>());
}

template <class Scalar>
void check_on_hyperboloid(const HyperPoint<Scalar>& p, const ModelParams<Scalar>& m) {
  const Scalar q = minkowski(p.x, p.x);
  const Scalar scale = p.x(0) * p.x(0) + m.tau * m.tau;
  if (!(p.x(0) > 0) || std::abs(q - m.tau * m.tau) > 1e-12 * scale)
    throw DomainError("HyperPoint: not on the hyperboloid sheet");
}

template <class Scalar>
HyperPoint<Scalar> hyper_origin(const ModelParams<Scalar>& m) {
  return {Vec4<Scalar>(m.tau, 0, 0, 0)};
}

// tau (cosh(r/tau), sinh(r/tau) omega) for a unit direction omega.
template <class Scalar>
HyperPoint<Scalar> polar_point(Scalar r, const Vec3<Scalar>& omega, const ModelParams<Scalar>& m) {
  HyperPoint<Scalar> p;
  p.x(0) = m.tau * std::cosh(r / m.tau);
  p.x.template tail<3>() = m.tau * std::sinh(r / m.tau) * omega.normalized();
  return p;
}

template <class Scalar>
BallPoint<Scalar> to_ball(const HyperPoint<Scalar>& p, const ModelParams<Scalar>& m) {
  check_on_hyperboloid(p, m);
  return {Vec3<Scalar>(m.t / (m.tau + p.x(0)) * p.x.template tail<3>())};
}

template <class Scalar>
HyperPoint<Scalar> from_ball(const BallPoint<Scalar>& y, const ModelParams<Scalar>& m) {
  const Scalar n2 = y.y.squaredNorm();
  const Scalar t2 = m.t * m.t;
  if (!(n2 < t2)) throw DomainError("from_ball: point outside the open ball");
  const Scalar den = t2 - n2;
  HyperPoint<Scalar> p;
  p.x(0) = m.tau * (t2 + n2) / den;
  p.x.template tail<3>() = 2 * m.tau * m.t / den * y.y;
  return p;
}

namespace detail {
template <class Scalar>
Scalar acosh_clamped(Scalar c, const char* who) {
  if (c < 1) {
    if (c < 1 - Scalar(1e-12)) throw DomainError(std::string(who) + ": arccosh argument below 1");
    c = 1;
  }
  return std::acosh(c);
}
} // namespace detail

template <class Scalar>
Scalar distance(const HyperPoint<Scalar>& p, const HyperPoint<Scalar>& q, const ModelParams<Scalar>& m) {
  check_on_hyperboloid(p, m);
  check_on_hyperboloid(q, m);
  return m.tau * detail::acosh_clamped(minkowski(p.x, q.x) / (m.tau * m.tau), "distance");
}

// Distance from the ball centre: tau log((t+|y|)/(t-|y|)).
template <class Scalar>
Scalar distance_from_origin(const BallPoint<Scalar>& y, const ModelParams<Scalar>& m) {
  const Scalar r = y.y.norm();
  if (!(r < m.t)) throw DomainError("distance_from_origin: point outside the open ball");
  return 2 * m.tau * std::atanh(r / m.t);
}

template <class Scalar>
Scalar distance(const BallPoint<Scalar>& y, const BallPoint<Scalar>& z, const ModelParams<Scalar>& m) {
  return distance(from_ball(y, m), from_ball(z, m), m);
}

// (d(z,0), d(z',0)) for z at geodesic polar coordinates (r, omega) about a point
// at distance R0 from the origin, z' antipodal; omega1 is the axial cosine.
namespace detail {
template <class Scalar>
Scalar log_sinh(Scalar x) {
  if (x == 0) return -std::numeric_limits<Scalar>::infinity();
  if (x < 1) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2 * x)) - std::numbers::ln2_v<Scalar>;
}

// Distance d with cosh d - 1 = 2 sinh^2((r-R0)/2) + sinh r sinh R0 m, m = 1 -/+ omega1.
// Both terms are nonnegative, so small d keeps full relative accuracy; logs avoid overflow.
template <class Scalar>
Scalar law_distance(Scalar r, Scalar R0, Scalar m) {
  const Scalar ninf = -std::numeric_limits<Scalar>::infinity();
  const Scalar t1 = std::numbers::ln2_v<Scalar> + 2 * log_sinh(std::abs(r - R0) / 2);
  const Scalar t2 = m > 0 ? log_sinh(r) + log_sinh(R0) + std::log(m) : ninf;
  const Scalar top = std::max(t1, t2);
  if (top == ninf) return 0;
  const Scalar lx = top + std::log(std::exp(t1 - top) + std::exp(t2 - top));
  if (lx > 600) return lx + std::numbers::ln2_v<Scalar>; // 2 asinh(sqrt(x/2)) = log 2x + O(1/x)
  return 2 * std::asinh(std::sqrt(std::exp(lx) / 2));
}
} // namespace detail

template <class Scalar>
std::pair<Scalar, Scalar> law_of_cosines(Scalar r, Scalar R0, Scalar omega1) {
  if (r < 0 || R0 < 0 || omega1 < -1 || omega1 > 1)
    throw DomainError("law_of_cosines: arguments out of range");
  return {detail::law_distance(r, R0, 1 - omega1), detail::law_distance(r, R0, 1 + omega1)};
}

// Unit-speed geodesic through p with initial direction w (projected to T_p).
template <class Scalar>
HyperPoint<Scalar> geodesic_point(const HyperPoint<Scalar>& p, const Vec4<Scalar>& w, Scalar s,
                                  const ModelParams<Scalar>& m) {
  const Scalar tau2 = m.tau * m.tau;
  Vec4<Scalar> v = w - minkowski(p.x, w) / tau2 * p.x;
  const Scalar nv = std::sqrt(-minkowski(v, v));
  if (!(nv > 0)) throw DomainError("geodesic_point: degenerate direction");
  v /= nv;
  return {std::cosh(s / m.tau) * p.x + m.tau * std::sinh(s / m.tau) * v};
}

// |B_r| for n = 3, tau = 1: pi (sinh 2r - 2r).
template <class Scalar>
Scalar ball_volume(Scalar r) {
  if (r < 0) throw DomainError("ball_volume: radius must be nonnegative");
  const Scalar x = 2 * r;
  if (x < Scalar(0.5)) {
    // sinh x - x = sum_{k>=1} x^{2k+1}/(2k+1)!
    Scalar term = x * x * x / 6, sum = 0;
    for (int k = 1; k < 40 && term != 0; ++k) {
      sum += term;
      term *= x * x / ((2 * k + 2) * (2 * k + 3));
    }
    return std::numbers::pi_v<Scalar> * sum;
  }
  return std::numbers::pi_v<Scalar> * (std::sinh(x) - x);
}

// General n and tau: omega_{n-1} tau^n int_0^{r/tau} sinh^{n-1} s ds.
inline double ball_volume_quadrature(double r, int n = 3, double tau = 1.0,
                                     const QuadratureConfig& cfg = {}) {
  if (r < 0 || n < 1 || !(tau > 0)) throw DomainError("ball_volume_quadrature: invalid arguments");
  const double sphere = 2 * std::pow(std::numbers::pi, n / 2.0) / boost::math::tgamma(n / 2.0);
  auto f = [n](double s) { return std::pow(std::sinh(s), n - 1); };
  return sphere * std::pow(tau, n) * quad::smooth(f, 0.0, r / tau, cfg).value;
}

// ((R/r)^3, D (R/r)^{log2 D}) with D = 8 cosh^2(2R).
template <class Scalar>
std::pair<Scalar, Scalar> doubling_bounds(Scalar r, Scalar R) {
  if (!(r > 0) || r > R) throw DomainError("doubling_bounds: need 0 < r <= R");
  const Scalar q = R / r;
  const Scalar c = std::cosh(2 * R);
  const Scalar D = 8 * c * c;
  return {q * q * q, D * std::pow(q, std::log2(D))};
}

template <class Scalar>
Scalar aux_S(Scalar t) {
  if (std::abs(t) < Scalar(1e-4)) return 1 + t * t / 6;
  return std::sinh(t) / t;
}

template <class Scalar>
Scalar aux_H(Scalar t) {
  if (std::abs(t) < Scalar(1e-4)) return 1 + t * t / 3;
  return t / std::tanh(t);
}

template <class Scalar>
Scalar tilde_radius(Scalar r) {
  if (!(r > 0)) throw DomainError("tilde_radius: radius must be positive");
  return std::atanh(std::tanh(r) / 2);
}

template <class Scalar>
Scalar aux_T(Scalar t) {
  if (t < 0) throw DomainError("aux_T: argument must be nonnegative");
  if (t < Scalar(1e-4)) return 2 + t * t / 2; // T(t) = 2 + t^2/2 + O(t^4)
  return t / tilde_radius(t);
}

// Radii with |B_{r_k}| = |B_{r_{k-1}}| / 8, by bisection on [r/2, r].
template <class Scalar>
DyadicLadder<Scalar> dyadic_ladder(Scalar r0, int K) {
  if (!(r0 > 0) || K < 1) throw DomainError("dyadic_ladder: need r0 > 0 and K >= 1");
  DyadicLadder<Scalar> ladder;
  ladder.radii.push_back(r0);
  for (int k = 1; k <= K; ++k) {
    const Scalar prev = ladder.radii.back();
    const Scalar target = ball_volume(prev) / 8;
    auto f = [&](Scalar x) { return ball_volume(x) - target; };
    auto tol = [](Scalar a, Scalar b) { return std::abs(b - a) <= Scalar(1e-15) * std::abs(b); };
    boost::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::bisect(f, prev / 2, prev, tol, iters);
    if (iters >= 200) {
      std::ostringstream os;
      os << "dyadic_ladder: bisection did not converge at level " << k << " (bracket [" << lo << ", "
         << hi << "])";
      throw NumericError(os.str(), (lo + hi) / 2, hi - lo);
    }
    const Scalar rk = (lo + hi) / 2;
    if (rk < prev / 2) throw NumericError("dyadic_ladder: r_k < r_{k-1}/2", rk);
    ladder.radii.push_back(rk);
  }
  return ladder;
}

// Volume of {z : r_in <= d(z,0) < r_out, cos(angle to axis) > omega1_min},
// integrated in the unit Poincare ball with density (2/(1-rho^2))^3 rho^2.
inline double ring_sector_volume(double r_in, double r_out, double omega1_min,
                                 const QuadratureConfig& cfg = {}) {
  if (!(r_in > 0) || !(r_in < r_out)) throw DomainError("ring_sector_volume: need 0 < r_in < r_out");
  if (omega1_min < -1 || omega1_min > 1) throw DomainError("ring_sector_volume: omega1_min outside [-1,1]");
  auto density = [](double rho) {
    const double c = 2 / (1 - rho * rho);
    return c * c * c * rho * rho;
  };
  const double a = std::tanh(r_in / 2), b = std::tanh(r_out / 2);
  return 2 * std::numbers::pi * (1 - omega1_min) * quad::smooth(density, a, b, cfg).value;
}

} // namespace hypfrac::geometry
