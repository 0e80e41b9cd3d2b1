#include "hypfrac/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "hypfrac/errors.hpp"

namespace hypfrac::specfun {
namespace {

constexpr double kPi = std::numbers::pi;

// 1/Gamma(z), zero at the poles.
double rgamma(double z) {
  if (z <= 0 && z == std::floor(z)) return 0.0;
  if (z > 170.0) return std::exp(-boost::math::lgamma(z));
  return 1.0 / boost::math::tgamma(z);
}

// log cosh(a) for a >= 0 without overflow.
double log_cosh(double a) { return a + std::log1p(std::exp(-2 * a)) - std::numbers::ln2; }

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// log of e^x K_nu(x) = log int_0^inf exp(-2x sinh^2(u/2)) cosh(nu u) du by the
// trapezoid rule, which converges geometrically for this analytic even integrand.
double log_bessel_k_scaled_trapezoid(double nu, double x) {
  auto h = [&](double u) {
    const double s = std::sinh(u / 2);
    return -2 * x * s * s + log_cosh(nu * u);
  };
  const double up = std::asinh(nu / x);
  const double hmax = std::max({h(0.0), h(up), h(0.5 * up), h(1.5 * up)});
  // Edges where the integrand has dropped by e^-45, bracketed by growth then shrinkage.
  const double cut = hmax - 45.0;
  double w = 1.0;
  while (h(up + w) > cut) w *= 1.5;
  while (w > 1e-300 && h(up + 0.7 * w) < cut) w *= 0.7;
  const double U = up + w;
  double L = 0.0;
  if (h(0.0) < cut) {
    double wl = std::min(1.0, up);
    while (up - wl > 0 && h(up - wl) > cut) wl = std::min(1.5 * wl, up);
    while (h(up - 0.7 * wl) < cut) wl *= 0.7;
    L = up - wl;
  }
  // With L = 0 the half weight at the origin makes this the full-line rule of an even
  // function; otherwise both ends are negligible. Either way convergence is geometric.
  const double w0 = (L == 0.0) ? 0.5 : 1.0;

  int n = 32;
  double step = (U - L) / n;
  double sum = w0 * std::exp(h(L) - hmax);
  for (int k = 1; k <= n; ++k) sum += std::exp(h(L + k * step) - hmax);
  double prev = sum * step;
  for (int iter = 0; iter < 14; ++iter) {
    // Halve the step, adding the new midpoints.
    double add = 0.0;
    for (int k = 0; k < n; ++k) add += std::exp(h(L + (k + 0.5) * step) - hmax);
    sum += add;
    n *= 2;
    step /= 2;
    const double cur = sum * step;
    if (std::abs(cur - prev) <= 1e-14 * cur) return std::log(cur) + hmax;
    prev = cur;
  }
  std::ostringstream os;
  os << "bessel_k: trapezoid did not converge for nu=" << nu << ", x=" << x;
  throw NumericError(os.str(), prev);
}

void require_positive(const char* who, double x) {
  if (!(x > 0)) throw DomainError(std::string(who) + ": argument must be positive");
}

// Ascending series of I_nu, nu >= 0; returns log I_nu(x).
double log_bessel_i_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int j = 0; j < 100000; ++j) {
    term *= q / ((j + 1.0) * (nu + j + 1.0));
    sum += term;
    if (term < 1e-17 * sum && j + 1 > x / 2) break;
  }
  return nu * std::log(x / 2) - boost::math::lgamma(nu + 1) + std::log(sum);
}

// Hankel expansion of e^{-x} I_nu(x) for large x.
double bessel_i_scaled_asymptotic(double nu, double x) {
  const double mu = 4 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2 * kPi * x);
}

// Hankel expansion of e^x K_nu(x) for large x.
double bessel_k_scaled_asymptotic(double nu, double x) {
  const double mu = 4 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum * std::sqrt(kPi / (2 * x));
}

constexpr double kAsymptoticI = 700.0;

} // namespace

double log_bessel_k(double nu, double x) {
  require_positive("bessel_k", x);
  nu = std::abs(nu);
  if (x < 1e-290) {
    const double lx2 = std::log(x) - std::numbers::ln2;
    if (nu == 0) return std::log(-lx2 - 0.57721566490153286);
    return boost::math::lgamma(nu) - std::numbers::ln2 - nu * lx2;
  }
  if (x > 1e4) return std::log(bessel_k_scaled_asymptotic(nu, x)) - x;
  return log_bessel_k_scaled_trapezoid(nu, x) - x;
}

double bessel_k(double nu, double x) {
  const double v = std::exp(log_bessel_k(nu, x));
  if (std::isinf(v)) throw OverflowError("bessel_k: result overflows", v);
  return v;
}

double bessel_k_scaled(double nu, double x) {
  require_positive("bessel_k_scaled", x);
  nu = std::abs(nu);
  if (x < 1e-290) return std::exp(log_bessel_k(nu, x));
  if (x > 1e4) return bessel_k_scaled_asymptotic(nu, x);
  return std::exp(log_bessel_k_scaled_trapezoid(nu, x));
}

double log_bessel_i(double nu, double x) {
  require_positive("log_bessel_i", x);
  if (nu >= 0) {
    if (x > kAsymptoticI) return x + std::log(bessel_i_scaled_asymptotic(nu, x));
    return log_bessel_i_series(nu, x);
  }
  const double v = bessel_i_scaled(nu, x);
  if (!(v > 0)) throw DomainError("log_bessel_i: I_nu(x) is not positive");
  return std::log(v) + x;
}

double bessel_i_scaled(double nu, double x) {
  if (x < 0) throw DomainError("bessel_i_scaled: argument must be nonnegative");
  if (x == 0) {
    if (nu == 0) return 1.0;
    if (nu > 0 || nu == std::floor(nu)) return 0.0;
    throw DomainError("bessel_i_scaled: I_nu(0) is infinite for negative non-integer nu");
  }
  if (nu >= 0) {
    if (x > kAsymptoticI) return bessel_i_scaled_asymptotic(nu, x);
    return std::exp(log_bessel_i_series(nu, x) - x);
  }
  // I_{-mu} = I_mu + (2/pi) sin(mu pi) K_mu
  const double mu = -nu;
  const double s = (mu == std::floor(mu)) ? 0.0 : std::sin(mu * kPi);
  double v = bessel_i_scaled(mu, x);
  if (s != 0.0) v += (2 / kPi) * s * std::exp(log_bessel_k(mu, x) - x);
  return v;
}

double bessel_i(double nu, double x) {
  if (x < 0) throw DomainError("bessel_i: argument must be nonnegative");
  if (x == 0) return bessel_i_scaled(nu, 0.0);
  if (nu >= 0) {
    const double l = log_bessel_i(nu, x);
    if (l > std::log(std::numeric_limits<double>::max()))
      throw OverflowError("bessel_i: result overflows; use bessel_i_scaled", l);
    return std::exp(l);
  }
  const double mu = -nu;
  const double s = (mu == std::floor(mu)) ? 0.0 : std::sin(mu * kPi);
  double v = bessel_i(mu, x);
  if (s != 0.0) v += (2 / kPi) * s * bessel_k(mu, x);
  return v;
}

double struve_l(double nu, double x) {
  require_positive("struve_l", x);
  if (x > 30.0) throw UnsupportedRange("struve_l: series evaluation limited to x <= 30");
  const double lx = std::log(x / 2);
  CompensatedSum acc;
  double maxterm = 0.0;
  for (int j = 0; j < 400; ++j) {
    const double a = j + 1.5, b = nu + j + 1.5;
    double term = 0.0;
    const double rb = rgamma(b);
    if (rb != 0.0) {
      int sign = 1;
      const double lb = boost::math::lgamma(b, &sign);
      term = sign * std::exp((2.0 * j + nu + 1) * lx - boost::math::lgamma(a) - lb);
    }
    acc.add(term);
    maxterm = std::max(maxterm, std::abs(term));
    if (b > 0 && j > x && std::abs(term) < 1e-18 * std::max(std::abs(acc.value()), maxterm))
      break;
  }
  return acc.value();
}

double bessel_i_half(int n, double x) {
  require_positive("bessel_i_half", x);
  if (n < -1 || n > 2) throw DomainError("bessel_i_half: n must be in {-1, 0, 1, 2}");
  if (n >= 1 && x < 2) {
    // The closed forms cancel for small x; sum the power series instead.
    const double h = x / 2, h2 = h * h;
    double term = std::pow(h, n + 0.5) / std::tgamma(n + 1.5), sum = term;
    for (int m = 1; m < 60 && term > 1e-18 * sum; ++m) {
      term *= h2 / (m * (m + n + 0.5));
      sum += term;
    }
    return sum;
  }
  const double c = std::sqrt(2 / (kPi * x));
  switch (n) {
  case -1:
    return c * std::cosh(x);
  case 0:
    return c * std::sinh(x);
  case 1:
    return c * (std::cosh(x) - std::sinh(x) / x);
  case 2:
    return c * ((1 + 3 / (x * x)) * std::sinh(x) - 3 * std::cosh(x) / x);
  default:
    throw DomainError("bessel_i_half: n must be in {-1, 0, 1, 2}");
  }
}

double bessel_k_half(int n, double x) {
  require_positive("bessel_k_half", x);
  if (n < 0) throw DomainError("bessel_k_half: n must be nonnegative");
  // K_{n+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_j (n+j)!/(j!(n-j)!) (2x)^{-j}
  double coef = 1.0, sum = 1.0;
  for (int j = 1; j <= n; ++j) {
    coef *= static_cast<double>((n + j) * (n - j + 1)) / (j * 2.0 * x);
    sum += coef;
  }
  return std::sqrt(kPi / (2 * x)) * std::exp(-x) * sum;
}

namespace {

void check_sc_order(const char* who, int k, double nu) {
  if (k < 0 || k > 8) throw DomainError(std::string(who) + ": k must be in [0, 8]");
  for (int i = 0; i <= k; ++i)
    if (std::abs(k + 1 + i - 2 * nu) < 1e-12)
      throw DomainError(std::string(who) + ": excluded order nu = (k+1+i)/2");
}

// Shared finite sum; `swap` selects the cosh family.
double sc_sum(int k, double nu, double rho, bool swap) {
  const double lead = std::pow(rho, k + 1.5 - nu);
  double ffac = 1.0, denom = 1.0, total = 0.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) ffac *= (k - j + 1);
    denom *= (k + 1 + j - 2 * nu);
    const int sg = (j % 2 == 0) ? 1 : -1;
    const int ia = swap ? -sg : sg;
    const double ia_v = bessel_i_half(ia == 1 ? 0 : -1, rho);
    const double ib_v = bessel_i_half(ia == 1 ? -1 : 0, rho);
    const double bracket = bessel_k(nu - j, rho) * ia_v + bessel_k(nu - j - 1, rho) * ib_v;
    total += sg * ffac / denom * bracket;
  }
  return std::sqrt(kPi / 2) * lead * total;
}

} // namespace

double s_integral(int k, double nu, double rho) {
  require_positive("s_integral", rho);
  check_sc_order("s_integral", k, nu);
  return sc_sum(k, nu, rho, false);
}

double c_integral(int k, double nu, double rho) {
  require_positive("c_integral", rho);
  check_sc_order("c_integral", k, nu);
  return sc_sum(k, nu, rho, true);
}

double l_integral(int two_k, double nu, double rho) {
  require_positive("l_integral", rho);
  if (two_k < 0 || two_k % 2 != 0) throw DomainError("l_integral: two_k must be even and >= 0");
  const int k = two_k / 2;
  const double shift = nu - k - 0.5;
  if (shift >= -1e-12 && std::abs(shift - std::round(shift)) < 1e-12)
    throw DomainError("l_integral: excluded order, nu - k - 1/2 is a nonnegative integer");
  if (rho > 30.0) throw UnsupportedRange("l_integral: rho limited to 30 by the Struve series");

  auto fact = [](int m) { return std::tgamma(m + 1.0); };
  double sum = 0.0;
  for (int j = 0; j < k; ++j) {
    const double c = fact(two_k) * fact(k - j) / (std::ldexp(1.0, j) * fact(k) * fact(two_k - 2 * j));
    sum -= c * std::pow(rho, two_k - j - nu) * bessel_k(-nu + 1 + j, rho);
  }
  const double g = std::tgamma(0.5 - nu + k);
  const double pref = std::sqrt(kPi) * g / std::pow(2.0, nu + 1 - k) * fact(two_k) /
                      (std::ldexp(1.0, k) * fact(k));
  const double a = -nu + k;
  const double boundary = bessel_k(a, rho) * struve_l(a - 1, rho) + bessel_k(a - 1, rho) * struve_l(a, rho);
  return sum + pref * rho * boundary;
}

RatioBoundsReport ratio_bounds_check(double nu, double x) {
  require_positive("ratio_bounds_check", x);
  RatioBoundsReport r;
  if (nu >= 0) {
    r.i_checked = true;
    r.i_ratio = bessel_i_scaled(nu + 0.5, x) / bessel_i_scaled(nu - 0.5, x);
    r.i_bound = x / (std::sqrt(x * x + nu * nu) + nu);
    r.i_holds = r.i_ratio < r.i_bound * (1 + 1e-14);
  }
  if (nu >= 0.5) {
    r.k_checked = true;
    r.k_ratio = std::exp(log_bessel_k(nu, x) - log_bessel_k(nu + 1, x));
    r.k_bound = x / (std::sqrt(x * x + (nu - 0.5) * (nu - 0.5)) + nu + 0.5);
    r.k_holds = r.k_ratio <= r.k_bound * (1 + 1e-13);
  }
  return r;
}

} // namespace hypfrac::specfun
