#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include "hypfrac/errors.hpp"
#include "hypfrac/specfun.hpp"
#include "support.hpp"

using namespace hypfrac::specfun;
using testing::rel_err;

namespace {

const double kPi = std::numbers::pi;

// Random order avoiding the excluded half-integer shifts by at least 0.05.
double random_order(std::mt19937_64& rng, double lo, double hi) {
  for (;;) {
    const double nu = testing::uniform(rng, lo, hi);
    const double frac = nu - std::floor(nu);
    if (std::abs(frac - 0.5) > 0.05) return nu;
  }
}

// Rounding noise of f near rho from tiny second differences, where the smooth part cancels. A finite
// difference with step h cannot resolve a derivative below floor / h.
template <class F>
double rounding_floor(F f, double rho) {
  const double f0 = f(rho);
  double floor = std::numeric_limits<double>::epsilon() * std::abs(f0);
  for (int i = 1; i <= 8; ++i) {
    const double d = rho * 1e-10 * i;
    floor = std::max(floor, std::abs(f(rho + d) + f(rho - d) - 2 * f0));
  }
  return floor;
}

// Relative derivative residual, or -1 when the oracle's rounding floor exceeds 1e-9 of the target.
template <class F>
double derivative_residual(F f, double rho, double want) {
  const double h = std::max(1e-5, 1e-5 * rho);
  if (rounding_floor(f, rho) / h > 1e-9 * std::abs(want)) return -1;
  return rel_err(numeric_derivative(f, rho), want);
}

} // namespace

TEST_CASE("reference values") {
  // 30-digit reference values
  CHECK(rel_err(bessel_i(2.3, 1.7), 0.31751221809585771526) < 1e-10);
  CHECK(rel_err(bessel_i(-0.7, 3.2), 5.2285816483020899308) < 1e-10);
  CHECK(rel_err(bessel_i(0.4, 45.0), 2079671437774153975.3) < 1e-10);
  CHECK(rel_err(bessel_k(2.3, 1.7), 0.54454547687836340196) < 1e-10);
  CHECK(rel_err(bessel_k(0.3, 40.0), 8.4021932613531396740e-19) < 1e-10);
  CHECK(rel_err(bessel_k(7.5, 0.2), 29541651129.423665256) < 1e-10);
  CHECK(rel_err(struve_l(0.5, 2.0), 1.5584020366298809069) < 1e-8);
  CHECK(rel_err(struve_l(1.3, 12.0), 17603.906746678459087) < 1e-8);
  CHECK(rel_err(struve_l(-0.5, 1.0), 0.93767488824548764672) < 1e-8);
}

TEST_CASE("half-integer closed forms") {
  CHECK(rel_err(bessel_i(0.5, 1.0), std::sqrt(2 / kPi) * std::sinh(1.0)) < 1e-14);
  CHECK(rel_err(bessel_k(0.5, 1.0), std::sqrt(kPi / 2) * std::exp(-1.0)) < 1e-14);
  for (double x : {0.01, 0.3, 1.0, 4.0, 17.0, 45.0}) {
    for (int n : {-1, 0, 1, 2}) CHECK(rel_err(bessel_i(n + 0.5, x), bessel_i_half(n, x)) < 1e-11);
    for (int n : {0, 1, 2, 5}) CHECK(rel_err(bessel_k(n + 0.5, x), bessel_k_half(n, x)) < 1e-11);
  }
  // L_{-1/2}(x) = sqrt(2/(pi x)) sinh x
  for (double x : {0.2, 1.0, 5.0}) CHECK(rel_err(struve_l(-0.5, x), std::sqrt(2 / (kPi * x)) * std::sinh(x)) < 1e-12);
}

TEST_CASE("small-argument asymptotics") {
  for (double nu : {0.3, 1.0, 2.5}) {
    double prev_i = 1, prev_k = 1;
    for (double x : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double ei = rel_err(bessel_i(nu, x), std::pow(x / 2, nu) / std::tgamma(nu + 1));
      const double ek = rel_err(bessel_k(nu, x), 0.5 * std::tgamma(nu) * std::pow(x / 2, -nu));
      CHECK(ei < prev_i);
      CHECK(ek < prev_k);
      prev_i = ei;
      prev_k = ek;
    }
    CHECK(prev_i < 1e-6);
    // K_nu correction is O(x^{2 min(nu, 1)}), with a log factor at nu = 1
    CHECK(prev_k < 10 * std::pow(5e-5, 2 * std::min(nu, 1.0)) * (1 - std::log(1e-4)));
    const double lead = std::pow(5e-4, nu + 1) / (std::tgamma(1.5) * std::tgamma(1.5 + nu));
    CHECK(rel_err(struve_l(nu, 1e-3), lead) < 1e-6);
  }
}

TEST_CASE("large-argument asymptotics approached monotonically") {
  for (double nu : {0.0, 0.7, 2.0}) {
    double prev_i = 1, prev_k = 1;
    for (double x = 20; x <= 50; x += 5) {
      const double ei = rel_err(bessel_i(nu, x), std::exp(x) / std::sqrt(2 * kPi * x));
      const double ek = rel_err(bessel_k(nu, x), std::sqrt(kPi / (2 * x)) * std::exp(-x));
      CHECK(ei < prev_i);
      CHECK(ek <= prev_k);
      prev_i = ei;
      prev_k = ek;
    }
  }
}

TEST_CASE("recurrences, derivatives and the Wronskian") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const double nu = testing::uniform(rng, -3.0, 6.0), x = testing::uniform(rng, 0.05, 40.0);
    const double km = bessel_k(nu - 1, x), k0 = bessel_k(nu, x), kp = bessel_k(nu + 1, x);
    CHECK(std::abs(kp - km - 2 * nu / x * k0) <= 1e-9 * (std::abs(kp) + std::abs(km)));
    const double im = bessel_i(nu - 1, x), i0 = bessel_i(nu, x), ip = bessel_i(nu + 1, x);
    CHECK(std::abs(im - ip - 2 * nu / x * i0) <= 1e-9 * (std::abs(im) + std::abs(ip)));

    const double dk = numeric_derivative([nu](double t) { return bessel_k(nu, t); }, x);
    CHECK(rel_err(dk, -km - nu / x * k0) < 1e-9);
    CHECK(rel_err(dk, -kp + nu / x * k0) < 1e-9);
    const double di = numeric_derivative([nu](double t) { return bessel_i(nu, t); }, x);
    CHECK(std::abs(di - (im - nu / x * i0)) <= 1e-9 * (std::abs(im) + std::abs(nu / x * i0)));
    CHECK(std::abs(di - (ip + nu / x * i0)) <= 1e-9 * (std::abs(ip) + std::abs(nu / x * i0)));

    CHECK(bessel_k(-nu, x) == doctest::Approx(k0).epsilon(1e-14));
    if (nu >= 0) CHECK(rel_err(i0 * kp + ip * k0, 1 / x) < 1e-10);
  }
}

TEST_CASE("scaled variants and ranges") {
  CHECK_THROWS_AS(bessel_i(0.5, 800.0), hypfrac::OverflowError);
  CHECK(rel_err(bessel_i_scaled(0.5, 800.0), std::sqrt(2 / (kPi * 800)) * (1 - std::exp(-1600.0)) / 2) < 1e-12);
  CHECK(rel_err(bessel_k_scaled(1.5, 900.0), std::sqrt(kPi / 1800) * (1 + 1.0 / 900)) < 1e-10);
  CHECK(rel_err(log_bessel_k(2.0, 1200.0), std::log(std::sqrt(kPi / 2400)) - 1200 + std::log1p(15.0 / 9600)) < 1e-9);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), hypfrac::DomainError);
  CHECK_THROWS_AS(bessel_k(1.0, -1.0), hypfrac::DomainError);
  CHECK_THROWS_AS(struve_l(0.5, 31.0), hypfrac::UnsupportedRange);
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  CHECK(bessel_i(1.5, 0.0) == 0.0);
}

TEST_CASE("Struve function increases in x") {
  for (double nu : {0.0, 0.5, 1.0, 3.0}) {
    double prev = 0;
    for (double x = 0.1; x <= 30; x += 0.1) {
      const double v = struve_l(nu, x);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("sinh and cosh integral families") {
  SUBCASE("k = 0 closed form") {
    // S^0 = sqrt(pi/2) rho^{3/2-nu}/(1-2nu) (K_nu I_{1/2} + K_{nu-1} I_{-1/2})
    const double nu = 0.3, rho = 1.7;
    const double want = std::sqrt(kPi / 2) * std::pow(rho, 1.5 - nu) / (1 - 2 * nu) *
                        (bessel_k(nu, rho) * bessel_i_half(0, rho) + bessel_k(nu - 1, rho) * bessel_i_half(-1, rho));
    CHECK(rel_err(s_integral(0, nu, rho), want) < 1e-14);
  }
  std::mt19937_64 rng(22);
  double worst = 0, worst_rec = 0;
  int resolved = 0;
  for (int i = 0; i < 400; ++i) {
    const int k = static_cast<int>(testing::uniform(rng, 0.0, 6.0));
    const double nu = random_order(rng, -2.0, 3.0), rho = testing::uniform(rng, 0.1, 12.0);
    const double base = std::pow(rho, k - nu) * bessel_k(-nu, rho);
    for (const double e : {derivative_residual([&](double r) { return s_integral(k, nu, r); }, rho, base * std::sinh(rho)),
                           derivative_residual([&](double r) { return c_integral(k, nu, r); }, rho, base * std::cosh(rho))})
      if (e >= 0) {
        ++resolved;
        worst = std::max(worst, e);
      }
    if (k >= 1) {
      const double d = k + 1 - 2 * nu;
      const double lead = std::sqrt(kPi / 2) * std::pow(rho, k + 1.5 - nu) / d;
      const double ip = bessel_i_half(0, rho), im = bessel_i_half(-1, rho);
      const double bs = lead * (bessel_k(nu, rho) * ip + bessel_k(nu - 1, rho) * im);
      const double bc = lead * (bessel_k(nu, rho) * im + bessel_k(nu - 1, rho) * ip);
      const double cs = k / d * c_integral(k - 1, nu - 1, rho), sc = k / d * s_integral(k - 1, nu - 1, rho);
      const double s = s_integral(k, nu, rho), c = c_integral(k, nu, rho);
      worst_rec = std::max(worst_rec, std::abs(s + cs - bs) / (std::abs(s) + std::abs(cs) + std::abs(bs)));
      worst_rec = std::max(worst_rec, std::abs(c + sc - bc) / (std::abs(c) + std::abs(sc) + std::abs(bc)));
    }
  }
  CHECK(resolved >= 600);
  CHECK(worst <= 1e-7);
  CHECK(worst_rec <= 1e-10);
  CHECK_THROWS_AS(s_integral(2, 1.5, 1.0), hypfrac::DomainError);
  CHECK_THROWS_AS(c_integral(1, 1.0, 1.0), hypfrac::DomainError);
  CHECK_THROWS_AS(s_integral(9, 0.3, 1.0), hypfrac::DomainError);
}

TEST_CASE("power integral family") {
  SUBCASE("2k = 0 closed form") {
    const double nu = 0.3, rho = 2.2;
    const double want = std::sqrt(kPi) * std::pow(2.0, -nu - 1) * std::tgamma(0.5 - nu) * rho *
                        (bessel_k(-nu, rho) * struve_l(-nu - 1, rho) + bessel_k(-nu - 1, rho) * struve_l(-nu, rho));
    CHECK(rel_err(l_integral(0, nu, rho), want) < 1e-14);
  }
  std::mt19937_64 rng(23);
  double worst = 0, worst_rec = 0;
  int resolved = 0;
  for (int i = 0; i < 300; ++i) {
    const int k = static_cast<int>(testing::uniform(rng, 0.0, 4.0));
    const double nu = random_order(rng, -2.0, 3.0), rho = testing::uniform(rng, 0.1, 12.0);
    const double e = derivative_residual([&](double r) { return l_integral(2 * k, nu, r); }, rho,
                                         std::pow(rho, 2 * k - nu) * bessel_k(-nu, rho));
    if (e >= 0) {
      ++resolved;
      worst = std::max(worst, e);
    }
    if (k >= 1) {
      const double a = l_integral(2 * k, nu, rho), b = std::pow(rho, 2 * k - nu) * bessel_k(1 - nu, rho),
                   c = (2 * k - 1) * l_integral(2 * k - 2, nu - 1, rho);
      worst_rec = std::max(worst_rec, std::abs(a + b - c) / (std::abs(a) + std::abs(b) + std::abs(c)));
    }
  }
  CHECK(resolved >= 100);
  CHECK(worst <= 1e-7);
  CHECK(worst_rec <= 1e-10);
  CHECK_THROWS_AS(l_integral(2, 1.5, 1.0), hypfrac::DomainError);
  CHECK_THROWS_AS(l_integral(3, 0.3, 1.0), hypfrac::DomainError);
  CHECK_THROWS_AS(l_integral(2, 0.3, 31.0), hypfrac::UnsupportedRange);
}

TEST_CASE("ratio bounds") {
  const auto r = ratio_bounds_check(0.5, 1.0);
  CHECK(r.i_checked);
  CHECK(r.k_checked);
  CHECK(r.holds());
  for (double nu : {0.5, 1.0, 2.0, 5.0})
    for (double x = 0.05; x <= 20; x += 0.05) {
      const auto g = ratio_bounds_check(nu, x);
      CHECK_MESSAGE(g.holds(), "nu=" << nu << " x=" << x);
    }
  const auto small = ratio_bounds_check(1.0, 1e-6);
  CHECK(small.i_ratio < 1e-6);
  CHECK(small.i_bound < 1e-6);
  CHECK(small.k_ratio < 1e-6);
  CHECK(small.k_bound < 1e-6);
  const auto i_only = ratio_bounds_check(0.2, 3.0);
  CHECK(i_only.i_checked);
  CHECK_FALSE(i_only.k_checked);
}
