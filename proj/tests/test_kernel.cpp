#include <doctest.h>

#include <numbers>

#include "hypfrac/errors.hpp"
#include "hypfrac/kernel.hpp"
#include "support.hpp"

using namespace hypfrac::kernel;
using testing::rel_err;

TEST_CASE("normalizing constant") {
  const double pi = std::numbers::pi;
  CHECK(rel_err(normalizing_constant(3, 0.5), 1 / (pi * pi)) < 1e-15);
  CHECK(rel_err(normalizing_constant(3, 0.3), 0.058593562451505897626) < 1e-14);
  // 1D check: C(1, 1/2) = 2 Gamma(1) / (sqrt(pi) 2 sqrt(pi)) = 1/pi
  CHECK(rel_err(normalizing_constant(1, 0.5), 1 / pi) < 1e-15);
  SUBCASE("vanishes like gamma and like 1 - gamma") {
    // C(3, g) ~ g * 2^0 Gamma(3/2) / pi^{3/2} as g -> 0, and ~ (1 - g) 4 Gamma(5/2) / pi^{3/2} as g -> 1
    const double c0 = std::tgamma(1.5) / std::pow(pi, 1.5), c1 = 4 * std::tgamma(2.5) / std::pow(pi, 1.5);
    double prev0 = 1, prev1 = 1;
    for (double e : {1e-2, 1e-3, 1e-4, 1e-5}) {
      const double e0 = rel_err(normalizing_constant(3, e) / e, c0);
      const double e1 = rel_err(normalizing_constant(3, 1 - e) / e, c1);
      CHECK(e0 < prev0);
      CHECK(e1 < prev1);
      prev0 = e0;
      prev1 = e1;
    }
    CHECK(prev0 < 1e-4);
    CHECK(prev1 < 1e-4);
  }
  CHECK_THROWS_AS(normalizing_constant(3, 0.0), hypfrac::DomainError);
  CHECK_THROWS_AS(normalizing_constant(3, 1.0), hypfrac::DomainError);
  CHECK_THROWS_AS(normalizing_constant(0, 0.5), hypfrac::DomainError);
}

TEST_CASE("kernel values") {
  CHECK(rel_err(kernel_value({0.5, 1.0}, 1.0), 0.070043581187736398912) < 1e-12);
  CHECK(rel_err(kernel_value({0.3, 2.0}, 1.5), 0.010742686342751778835) < 1e-12);
  CHECK(rel_err(kernel_value({0.7, 1.0}, 0.01), 77090997.778182328193) < 1e-12);
  CHECK(rel_err(std::exp(log_kernel({0.5, 1.0}, 1.0)), 0.070043581187736398912) < 1e-12);
  CHECK(rel_err(kernel_sinh2(0.5, 1.0), 0.070043581187736398912 * std::pow(std::sinh(1.0), 2)) < 1e-12);
  // far out, only the log stays finite
  CHECK(std::isfinite(log_kernel({0.5, 1.0}, 2000.0)));
  CHECK(rel_err(log_kernel_sinh2({0.5, 1.0}, 2000.0), std::log(kernel_sinh2(0.5, 2000.0))) < 1e-12);
  CHECK(rel_err(log_sinh(800.0), 800 - std::log(2.0)) < 1e-15);
  CHECK(rel_err(log_sinh(1e-8), std::log(1e-8)) < 1e-14);
  CHECK_THROWS_AS(kernel_value({0.5, 1.0}, 0.0), hypfrac::DomainError);
  CHECK_THROWS_AS(kernel_value({1.5, 1.0}, 1.0), hypfrac::DomainError);
  CHECK_THROWS_AS(kernel_value({0.5, -1.0}, 1.0), hypfrac::DomainError);
}

TEST_CASE("kernel is positive and strictly decreasing") {
  for (double g : {0.05, 0.3, 0.5, 0.7, 0.95})
    for (double tau : {0.5, 1.0, 3.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double rho = 0.01; rho <= 20; rho += 0.01) {
        const double v = log_kernel({g, tau}, rho);
        CHECK(std::isfinite(v));
        CHECK(v < prev);
        prev = v;
      }
    }
}

TEST_CASE("asymptotic regimes") {
  for (double g : {0.3, 0.7}) {
    const double near = testing::loglog_slope(
        [g](double r) { return 2 * std::log(r) + log_kernel_sinh2({g, 1.0}, r); }, 1e-4, 1e-2);
    const double far = testing::loglog_slope([g](double r) { return log_kernel_sinh2({g, 1.0}, r); }, 1e2, 1e4);
    CHECK(std::abs(near - (1 - 2 * g)) <= 0.02);
    CHECK(std::abs(far - (-1 - g)) <= 0.02);
  }
}

TEST_CASE("Euclidean limit") {
  const double at_1000 = euclidean_limit_ratio(0.5, 1.0, 1e3);
  CHECK(at_1000 >= 0.999);
  CHECK(at_1000 <= 1.001);
  double prev = 0;
  for (double tau : {1.0, 10.0, 100.0, 1000.0}) {
    const double r = euclidean_limit_ratio(0.5, 1.0, tau);
    CHECK(std::abs(r - 1) < std::abs(prev - 1));
    prev = r;
  }
  CHECK(std::abs(euclidean_limit_ratio(0.3, 1e-4, 1.0) - 1) < 1e-6);
}

TEST_CASE("spectral kernel") {
  CHECK(spectral_kernel(0.0, 2.0, 1.3) == 0.0);
  // lambda sin(lambda rho) is even in lambda
  CHECK(spectral_kernel(-1.7, 2.0, 1.3) == spectral_kernel(1.7, 2.0, 1.3));
  const double pi = std::numbers::pi;
  CHECK(rel_err(spectral_kernel(1.0, 2.0, 1.0), -std::sin(1.0) / (4 * pi * pi * std::sinh(1.0))) < 1e-15);
  // decays like e^{-2 rho / t}
  const double a = std::abs(spectral_kernel(0.3, 2.0, 30.0)), b = std::abs(spectral_kernel(0.3, 2.0, 40.0));
  const double ratio = (b / std::sin(12.0)) / (a / std::sin(9.0));
  CHECK(rel_err(std::abs(ratio), std::exp(-10.0)) < 1e-12);
}

TEST_CASE("invariance integral") {
  hypfrac::QuadratureConfig cfg;
  CHECK(rel_err(invariance_integral(1.0, 0.5, 2.0, cfg), std::sqrt(2.0)) < 1e-6);
  CHECK(rel_err(invariance_integral(0.0, 0.5, 2.0, cfg), 1.0) < 1e-6);
  CHECK(rel_err(invariance_integral(1e-9, 0.5, 2.0, cfg), 1.0) < 1e-6);
  for (double lambda : {0.5, 1.0, 2.0, 4.0})
    for (double g : {0.2, 0.5, 0.8, 0.95}) {
      const auto r = invariance_integral_detail(lambda, g, 2.0, cfg);
      CHECK_MESSAGE(rel_err(r.value, std::pow(lambda * lambda + 1, g)) <= 1e-6, "lambda " << lambda << " gamma " << g);
      CHECK(r.min_integrand >= 0);
    }
  SUBCASE("ends of the gamma range and fast oscillation") {
    for (double g : {1e-3, 0.01, 0.999})
      for (double lambda : {0.0, 1.0, 100.0})
        CHECK_MESSAGE(rel_err(invariance_integral(lambda, g, 2.0, cfg), std::pow(lambda * lambda + 1, g)) <= 1e-6,
                      "lambda " << lambda << " gamma " << g);
  }
  SUBCASE("other t") {
    for (double t : {0.5, 4.0}) CHECK(rel_err(invariance_integral(1.5, 0.4, t, cfg), std::pow(2.25 + 4 / (t * t), 0.4)) <= 1e-6);
  }
}
