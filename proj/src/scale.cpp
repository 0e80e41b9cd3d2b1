#include "hypfrac/scale.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "hypfrac/errors.hpp"
#include "hypfrac/geometry.hpp"
#include "hypfrac/kernel.hpp"
#include "hypfrac/specfun.hpp"

namespace hypfrac::scale {
namespace {

void check_args(const char* who, double R, double gamma) {
  if (!(R > 0)) throw DomainError(std::string(who) + ": R must be positive");
  if (!(gamma > 0 && gamma < 1)) throw DomainError(std::string(who) + ": gamma must lie in (0,1)");
}

// R^{3-gamma} I_a(R) K_b(R), formed in log space.
double product(double R, double gamma, double a, double b) {
  using namespace specfun;
  return std::exp((3 - gamma) * std::log(R) + log_bessel_i(a, R) + log_bessel_k(b, R));
}

double leading_pair(double R, double g) { return product(R, g, 0.5, 1.5 + g) + product(R, g, 1.5, 0.5 + g); }

// 4 pi int_0^b rho^2 K sinh^2 d rho. The integrand behaves like rho^{1-2 gamma}; with x = rho^{2-2 gamma}
// it is bounded at x = 0, which keeps tanh-sinh usable as gamma -> 1.
double near_moment(double b, double gamma, const QuadratureConfig& cfg) {
  const double p = 2 - 2 * gamma;
  auto f = [gamma, p](double x) {
    if (!(x > 0)) return 0.0;
    const double lr = std::log(x) / p;
    if (lr < -700) return kernel::normalizing_constant(3, gamma) / p; // rho^{1+2 gamma} K sinh^2 -> C(3, gamma)
    return std::exp((3 - p) * lr + kernel::log_kernel_sinh2({gamma, 1.0}, std::exp(lr))) / p;
  };
  return 4 * std::numbers::pi * quad::endpoint_singular(f, 0.0, std::pow(b, p), cfg).value;
}

// 4 pi int_b^inf K sinh^2 d rho. The integrand decays like rho^{-1-gamma}; with rho = b y^{-1/gamma}
// it becomes bounded on (0, 1].
double far_mass(double b, double gamma, const QuadratureConfig& cfg) {
  auto f = [gamma, b](double y) {
    if (!(y > 0)) return 0.0;
    const double lr = std::log(b) - std::log(y) / gamma;
    if (lr > 700) {
      // K sinh^2 -> C(3, gamma) sqrt(pi/2) rho^{-1-gamma} / (Gamma(nu) 2^nu), nu = 3/2 + gamma
      const double nu = 1.5 + gamma;
      const double L = kernel::normalizing_constant(3, gamma) * std::sqrt(std::numbers::pi / 2) /
                       (boost::math::tgamma(nu) * std::pow(2.0, nu));
      return L * std::pow(b, -gamma) / gamma;
    }
    return std::exp(kernel::log_kernel_sinh2({gamma, 1.0}, std::exp(lr)) + lr - std::log(y)) / gamma;
  };
  return 4 * std::numbers::pi * quad::endpoint_singular(f, 0.0, 1.0, cfg).value;
}

} // namespace

double i0_closed(double R, double gamma) {
  check_args("i0_closed", R, gamma);
  const double g = gamma;
  // 2^g/((1-g)|Gamma(-g)|) = 2^g g / Gamma(2-g)
  const double a1 = std::pow(2.0, g) * g / boost::math::tgamma(2 - g);
  const double a2 = a1 / (2 - g);
  const double second = product(R, g, 1.5, 0.5 + g) + product(R, g, 2.5, g - 0.5);
  return a1 * leading_pair(R, g) - a2 * second;
}

double iinf_closed(double R, double gamma) {
  check_args("iinf_closed", R, gamma);
  // 2^g/(g |Gamma(-g)|) = 2^g / Gamma(1-g)
  return std::pow(2.0, gamma) / boost::math::tgamma(1 - gamma) * leading_pair(R, gamma);
}

ScaleValues scale_values(double R, double gamma) { return {i0_closed(R, gamma), iinf_closed(R, gamma), R, gamma}; }

double i0_quadrature(double R, double gamma, const QuadratureConfig& cfg) {
  check_args("i0_quadrature", R, gamma);
  cfg.validate();
  return near_moment(R, gamma, cfg);
}

double iinf_quadrature(double R, double gamma, const QuadratureConfig& cfg) {
  check_args("iinf_quadrature", R, gamma);
  cfg.validate();
  return R * R * far_mass(R, gamma, cfg);
}

double itotal_quadrature(double R, double gamma, const QuadratureConfig& cfg) {
  check_args("itotal_quadrature", R, gamma);
  cfg.validate();
  auto f = [gamma, R](double rho) {
    if (!(rho > 0)) return 0.0;
    return std::exp(2 * std::log(std::min(rho, R)) + kernel::log_kernel_sinh2({gamma, 1.0}, rho));
  };
  const double a = R / 2, b = 2 * R;
  const double v = quad::smooth(f, a, R, cfg).value + quad::smooth(f, R, b, cfg).value;
  return near_moment(a, gamma, cfg) + 4 * std::numbers::pi * v + R * R * far_mass(b, gamma, cfg);
}

double r0_solve(double R, double gamma, double rho0) {
  check_args("r0_solve", R, gamma);
  if (!(rho0 > 0 && rho0 < 1)) throw DomainError("r0_solve: rho0 must lie in (0,1)");
  const double target = i0_closed(R, gamma) / 2;
  // Bisection in log x; near gamma = 1 the root sits far below 1e-8.
  double lo = std::log(1e-300), hi = std::log(R);
  if (i0_closed(std::exp(lo), gamma) >= target) {
    std::ostringstream os;
    os << "r0_solve: root below 1e-300 for gamma=" << gamma;
    throw NumericError(os.str());
  }
  for (int it = 0; it < 200 && hi - lo > 1e-11; ++it) {
    const double mid = (lo + hi) / 2;
    if (i0_closed(std::exp(mid), gamma) < target)
      lo = mid;
    else
      hi = mid;
  }
  if (hi - lo > 1e-11) throw NumericError("r0_solve: bisection did not converge", std::exp(lo), hi - lo);
  return rho0 * std::exp((lo + hi) / 2);
}

MonotonicityReport monotonicity_report(double gamma, const std::vector<double>& R_grid) {
  if (R_grid.empty()) throw DomainError("monotonicity_report: empty grid");
  if (!std::is_sorted(R_grid.begin(), R_grid.end())) throw DomainError("monotonicity_report: grid must be ascending");
  MonotonicityReport rep;
  rep.gamma = gamma;
  // Closed forms carry ~1e-13 relative rounding; smaller negative margins count as ties.
  constexpr double slack = 1e-12;
  for (std::size_t i = 0; i < R_grid.size(); ++i) {
    const double R = R_grid[i];
    MonotonicityRow row;
    row.R = R;
    row.i0 = i0_closed(R, gamma);
    row.iinf = iinf_closed(R, gamma);
    row.ratio_2mg = row.i0 / std::pow(R, 2 - gamma);
    row.ratio_2 = row.i0 / (R * R);
    if (i > 0) {
      const MonotonicityRow& p = rep.rows.back();
      row.margin_2mg = (p.ratio_2mg - row.ratio_2mg) / p.ratio_2mg;
      row.margin_2 = (p.ratio_2 - row.ratio_2) / p.ratio_2;
    }
    row.margin_inequality = ((1 - gamma) / gamma * geometry::aux_H(R) * row.i0 - row.iinf) / row.i0;
    rep.worst_inequality = i ? std::min(rep.worst_inequality, row.margin_inequality) : row.margin_inequality;
    rep.rows.push_back(row);
  }
  // The first row has no predecessor, so its zero monotonicity margins are skipped.
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.worst_2mg = (i == 1) ? rep.rows[i].margin_2mg : std::min(rep.worst_2mg, rep.rows[i].margin_2mg);
    rep.worst_2 = (i == 1) ? rep.rows[i].margin_2 : std::min(rep.worst_2, rep.rows[i].margin_2);
  }
  rep.holds = rep.worst_2mg >= -slack && rep.worst_2 >= -slack && rep.worst_inequality >= -slack;
  return rep;
}

} // namespace hypfrac::scale
