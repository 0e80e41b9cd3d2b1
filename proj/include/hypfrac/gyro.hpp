#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "hypfrac/errors.hpp"
#include "hypfrac/quadrature.hpp"

namespace hypfrac::gyro {

template <class Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

// Point of the Poincare ball of radius t, carrying its t.
template <class Scalar = double>
struct GyroElement {
  Vec3<Scalar> y = Vec3<Scalar>::Zero();
  Scalar t = 2;

  GyroElement() = default;
  GyroElement(const Vec3<Scalar>& v, Scalar radius) : y(v), t(radius) {
    if (!(t > 0)) throw DomainError("GyroElement: t must be positive");
    if (!(y.squaredNorm() < t * t)) throw DomainError("GyroElement: point outside the open ball");
  }
};

template <class Scalar = double>
struct EigenParams {
  Scalar lambda = 0;
  Vec3<Scalar> xi = Vec3<Scalar>::UnitX();
  Scalar t = 2;

  void validate() const {
    if (std::abs(xi.norm() - 1) > Scalar(1e-14)) throw DomainError("EigenParams: xi must be a unit vector");
    if (!(t > 0)) throw DomainError("EigenParams: t must be positive");
  }
};

namespace detail {
template <class Scalar>
void same_t(const GyroElement<Scalar>& a, const GyroElement<Scalar>& b) {
  if (a.t != b.t) throw DomainError("gyro: operands live in balls of different radius");
}

// Result of an algebraic operation; rounding may push |v| onto t near the boundary.
template <class Scalar>
GyroElement<Scalar> make(const Vec3<Scalar>& v, Scalar t) {
  GyroElement<Scalar> g;
  g.y = v;
  g.t = t;
  if (!(v.squaredNorm() < t * t)) throw NumericError("gyro: result left the open ball");
  return g;
}

// |1 + conj(z) y / t^2|^2 in real form.
template <class Scalar>
Scalar clifford_mod2(const Vec3<Scalar>& z, const Vec3<Scalar>& y, Scalar t) {
  const Scalar t2 = t * t;
  const Scalar zy = z.dot(y);
  const Scalar a = 1 + zy / t2;
  return a * a + (z.squaredNorm() * y.squaredNorm() - zy * zy) / (t2 * t2);
}
} // namespace detail

template <class Scalar>
GyroElement<Scalar> gyro_neg(const GyroElement<Scalar>& x) {
  return detail::make<Scalar>(-x.y, x.t);
}

template <class Scalar>
GyroElement<Scalar> mobius_add(const GyroElement<Scalar>& x, const GyroElement<Scalar>& y) {
  detail::same_t(x, y);
  const Scalar t2 = x.t * x.t;
  const Scalar xy = x.y.dot(y.y);
  const Scalar xx = x.y.squaredNorm(), yy = y.y.squaredNorm();
  const Scalar num_x = 1 + 2 * xy / t2 + yy / t2;
  const Scalar num_y = 1 - xx / t2;
  const Scalar den = 1 + 2 * xy / t2 + xx * yy / (t2 * t2);
  return detail::make<Scalar>((num_x * x.y + num_y * y.y) / den, x.t);
}

// gyr[x,y]z = -(x+y) + (x + (y + z)), all additions Mobius. Loses digits once x+y nears the boundary.
template <class Scalar>
GyroElement<Scalar> gyration_composition(const GyroElement<Scalar>& x, const GyroElement<Scalar>& y,
                                         const GyroElement<Scalar>& z) {
  detail::same_t(x, y);
  detail::same_t(x, z);
  return mobius_add(gyro_neg(mobius_add(x, y)), mobius_add(x, mobius_add(y, z)));
}

// Same map expanded in inner products: z + 2 (A x + B y)/D.
template <class Scalar>
GyroElement<Scalar> gyration(const GyroElement<Scalar>& x, const GyroElement<Scalar>& y,
                             const GyroElement<Scalar>& z) {
  detail::same_t(x, y);
  detail::same_t(x, z);
  const Scalar t2 = x.t * x.t, t4 = t2 * t2;
  const Scalar xy = x.y.dot(y.y), xz = x.y.dot(z.y), yz = y.y.dot(z.y);
  const Scalar xx = x.y.squaredNorm(), yy = y.y.squaredNorm();
  const Scalar A = -xz * yy / t4 + yz / t2 + 2 * xy * yz / t4;
  const Scalar B = -yz * xx / t4 - xz / t2;
  const Scalar D = 1 + 2 * xy / t2 + xx * yy / t4;
  return detail::make<Scalar>(z.y + 2 * (A * x.y + B * y.y) / D, x.t);
}

template <class Scalar>
GyroElement<Scalar> coadd(const GyroElement<Scalar>& x, const GyroElement<Scalar>& y) {
  return mobius_add(x, gyration(x, gyro_neg(y), y));
}

// z [-] y by its defining composition z (-) gyr[z,y]y.
template <class Scalar>
GyroElement<Scalar> cosub_composition(const GyroElement<Scalar>& z, const GyroElement<Scalar>& y) {
  return mobius_add(z, gyro_neg(gyration(z, y, y)));
}

// Closed form ((1-|y|^2/t^2) z - (1-|z|^2/t^2) y) / (1 - |z|^2|y|^2/t^4).
template <class Scalar>
GyroElement<Scalar> cosub(const GyroElement<Scalar>& z, const GyroElement<Scalar>& y) {
  detail::same_t(z, y);
  const Scalar t2 = z.t * z.t;
  const Scalar zz = z.y.squaredNorm(), yy = y.y.squaredNorm();
  const Scalar A = 1 - zz * yy / (t2 * t2);
  return detail::make<Scalar>(((1 - yy / t2) * z.y - (1 - zz / t2) * y.y) / A, z.t);
}

template <class Scalar>
struct CancellationReport {
  bool holds = true;
  Scalar left_residual = 0;  // |a + (-a + b) - b|
  Scalar right_residual = 0; // |(b [-] a) + a - b|
};

template <class Scalar>
CancellationReport<Scalar> cancellation_check(const GyroElement<Scalar>& a, const GyroElement<Scalar>& b,
                                              Scalar tol = Scalar(1e-12)) {
  CancellationReport<Scalar> r;
  r.left_residual = (mobius_add(a, mobius_add(gyro_neg(a), b)).y - b.y).norm() / a.t;
  r.right_residual = (mobius_add(cosub(b, a), a).y - b.y).norm() / a.t;
  r.holds = r.left_residual <= tol && r.right_residual <= tol;
  return r;
}

// Jacobian determinant of z -> z [-] y (n = 3).
template <class Scalar>
Scalar boxminus_jacobian(const GyroElement<Scalar>& z, const GyroElement<Scalar>& y) {
  detail::same_t(z, y);
  const Scalar t2 = z.t * z.t;
  const Scalar A = 1 - z.y.squaredNorm() * y.y.squaredNorm() / (t2 * t2);
  const Scalar B = 1 - y.y.squaredNorm() / t2;
  return B * B * B * detail::clifford_mod2(z.y, y.y, z.t) / (A * A * A * A);
}

// Density ratio d mu(z [-] y) / d mu(z) (n = 3).
template <class Scalar>
Scalar measure_factor(const GyroElement<Scalar>& z, const GyroElement<Scalar>& y) {
  detail::same_t(z, y);
  const Scalar t2 = z.t * z.t;
  const Scalar A = 1 - z.y.squaredNorm() * y.y.squaredNorm() / (t2 * t2);
  const Scalar q = A / detail::clifford_mod2(z.y, y.y, z.t);
  return q * q;
}

namespace detail {
// base^{(2 + i k)/2} on the principal branch; base must be positive.
template <class Scalar>
std::complex<Scalar> real_base_power(Scalar base, Scalar k) {
  if (!(base > 0)) throw NumericError("gyro: power base left the positive real axis", base);
  const Scalar lb = std::log(base);
  return std::exp(std::complex<Scalar>(lb, k * lb / 2));
}
} // namespace detail

// ((t^2 - |y|^2)/|t xi - y|^2)^{(2 + i lambda t)/2}.
template <class Scalar>
std::complex<Scalar> eigenfunction(const EigenParams<Scalar>& ep, const Vec3<Scalar>& y) {
  ep.validate();
  const Scalar t2 = ep.t * ep.t;
  if (!(y.squaredNorm() < t2)) throw DomainError("eigenfunction: point outside the open ball");
  const Scalar base = (t2 - y.squaredNorm()) / (ep.t * ep.xi - y).squaredNorm();
  return detail::real_base_power(base, ep.lambda * ep.t);
}

// Base of the transport power in e_{-lambda}(z [-] y) = P^{(2 - i lambda t)/2} e_{-lambda}(z).
template <class Scalar>
Scalar transport_base(const Vec3<Scalar>& xi, const Vec3<Scalar>& y, const Vec3<Scalar>& z, Scalar t) {
  const Scalar t2 = t * t;
  const Scalar A = 1 - z.squaredNorm() * y.squaredNorm() / (t2 * t2);
  const Scalar B = 1 - y.squaredNorm() / t2;
  const Scalar C = 1 - z.squaredNorm() / t2;
  const Scalar num = (xi - z / t).squaredNorm() * B * detail::clifford_mod2(z, y, t);
  const Scalar den = (A * xi - B * z / t + C * y / t).squaredNorm();
  return num / den;
}

template <class Scalar>
std::complex<Scalar> e_factor(Scalar lambda, const Vec3<Scalar>& xi, const Vec3<Scalar>& y,
                              const Vec3<Scalar>& z, Scalar t) {
  const Scalar t2 = t * t;
  if (!(y.squaredNorm() < t2) || !(z.squaredNorm() < t2))
    throw DomainError("e_factor: points must lie in the open ball");
  const Scalar A = 1 - z.squaredNorm() * y.squaredNorm() / (t2 * t2);
  const Scalar q = A / detail::clifford_mod2(z, y, t);
  return detail::real_base_power(transport_base(xi, y, z, t), -lambda * t) * (q * q);
}

// int_{S^2} E(lambda, xi, r omega, z) d omega by Gauss-Legendre in cos(theta)
// times the trapezoid rule in phi, refined until successive levels agree.
std::complex<double> sphere_integral_E(double lambda, double r, const Vec3<double>& z,
                                       const Vec3<double>& xi, double t, const QuadratureConfig& cfg);

// (4 pi/(lambda t)) (t/r - r/t) sin(lambda d) with d = (t/2) log((t+r)/(t-r)).
double sphere_integral_E_closed(double lambda, double r, double t);

} // namespace hypfrac::gyro
