#include "hypfrac/gyro.hpp"

#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

namespace hypfrac::gyro {
namespace {

struct GaussRule {
  std::vector<double> x, w;
};

GaussRule gauss_legendre(int n) {
  GaussRule g;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    const double dp = boost::math::legendre_p_prime<double>(n, z);
    const double w = 2 / ((1 - z * z) * dp * dp);
    g.x.push_back(z);
    g.w.push_back(w);
    if (z != 0) {
      g.x.push_back(-z);
      g.w.push_back(w);
    }
  }
  return g;
}

std::complex<double> product_rule(int n, double lambda, double r, const Vec3<double>& z,
                                  const Vec3<double>& xi, double t) {
  const GaussRule g = gauss_legendre(n);
  const int m = 2 * n;
  const double dphi = 2 * std::numbers::pi / m;
  std::complex<double> total = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double c = g.x[i], s = std::sqrt(1 - c * c);
    std::complex<double> ring = 0;
    for (int j = 0; j < m; ++j) {
      const double phi = j * dphi;
      const Vec3<double> y = r * Vec3<double>(c, s * std::cos(phi), s * std::sin(phi));
      ring += e_factor(lambda, xi, y, z, t);
    }
    total += g.w[i] * dphi * ring;
  }
  return total;
}

} // namespace

std::complex<double> sphere_integral_E(double lambda, double r, const Vec3<double>& z, const Vec3<double>& xi,
                                       double t, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(r > 0 && r < t)) throw DomainError("sphere_integral_E: need 0 < r < t");
  if (!(z.norm() < t)) throw DomainError("sphere_integral_E: z must lie in the open ball");
  std::complex<double> prev = product_rule(8, lambda, r, z, xi, t);
  for (int n = 16; n <= 1024; n *= 2) {
    const std::complex<double> cur = product_rule(n, lambda, r, z, xi, t);
    if (std::abs(cur - prev) <= std::max(cfg.rel_tol * std::abs(cur), cfg.abs_tol)) return cur;
    prev = cur;
  }
  std::ostringstream os;
  os << "sphere_integral_E: product rule did not converge (lambda=" << lambda << ", r=" << r << ")";
  throw NumericError(os.str(), std::abs(prev));
}

double sphere_integral_E_closed(double lambda, double r, double t) {
  if (!(r > 0 && r < t)) throw DomainError("sphere_integral_E_closed: need 0 < r < t");
  const double d = t / 2 * std::log((t + r) / (t - r));
  const double geom = 4 * std::numbers::pi / t * (t / r - r / t);
  if (lambda == 0) return geom * d;
  return geom * std::sin(lambda * d) / lambda;
}

} // namespace hypfrac::gyro
