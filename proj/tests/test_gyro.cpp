#include <doctest.h>

#include "hypfrac/gyro.hpp"
#include "hypfrac/gyro_suite.hpp"
#include "support.hpp"

using namespace hypfrac::gyro;
using testing::rel_err;
using G = GyroElement<double>;

namespace {

constexpr double kT = 2.0;

G random_element(std::mt19937_64& rng, double fraction = 0.95) {
  return G(fraction * kT * std::cbrt(testing::uniform(rng, 0.0, 1.0)) * testing::random_direction(rng), kT);
}

double gap(const G& a, const G& b) { return (a.y - b.y).norm() / kT; }

const G kZero(Vec3<double>::Zero(), kT);

} // namespace

TEST_CASE("Mobius addition") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const G x = random_element(rng), y = random_element(rng, 0.999);
    CHECK(gap(mobius_add(kZero, x), x) == 0.0);
    CHECK(gap(mobius_add(gyro_neg(x), x), kZero) < 1e-15);
    CHECK(mobius_add(x, y).y.norm() < kT);
  }
  CHECK_THROWS_AS(G(Vec3<double>(2, 0, 0), kT), hypfrac::DomainError);
  CHECK_THROWS_AS(mobius_add(G(Vec3<double>::Zero(), 1.0), kZero), hypfrac::DomainError);
  SUBCASE("reduces to velocity addition on a line") {
    const G a(Vec3<double>(0.5, 0, 0), kT), b(Vec3<double>(1.0, 0, 0), kT);
    // (a + b)/(1 + ab/t^2) for collinear points
    CHECK(rel_err(mobius_add(a, b).y(0), 1.5 / (1 + 0.5 / 4)) < 1e-15);
  }
}

TEST_CASE("gyration") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const G x = random_element(rng), y = random_element(rng), z = random_element(rng);
    CHECK(gap(gyration(x, kZero, z), z) < 1e-15);
    CHECK(gap(gyration(kZero, y, z), z) < 1e-15);
    const G g = gyration(x, y, z);
    CHECK(std::abs(g.y.norm() - z.y.norm()) < 1e-12);
    CHECK(gap(g, gyration_composition(x, y, z)) < 1e-10);
    // gyr[x,y] is linear: it commutes with scaling z
    const G half(z.y / 2, kT);
    CHECK((gyration(x, y, half).y - g.y / 2).norm() < 1e-12);
  }
}

TEST_CASE("coaddition and cosubtraction") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const G z = random_element(rng), y = random_element(rng);
    CHECK(gap(cosub(z, kZero), z) < 1e-15);
    CHECK(gap(cosub(z, z), kZero) < 1e-15);
    CHECK(gap(cosub(z, y), cosub_composition(z, y)) < 1e-12);
    // x [+] y = x + gyr[x, -y] y is commutative
    CHECK(gap(coadd(z, y), coadd(y, z)) < 1e-12);
    // (z [-] y) + y = z, with Mobius addition
    CHECK(gap(mobius_add(cosub(z, y), y), z) < 1e-10);
  }
}

TEST_CASE("cancellation laws") {
  std::mt19937_64 rng(14);
  CHECK(cancellation_check(kZero, random_element(rng)).holds);
  for (int i = 0; i < 1000; ++i) CHECK(cancellation_check(random_element(rng), random_element(rng)).holds);
  for (int i = 0; i < 1000; ++i) {
    const G a(0.99 * kT * testing::random_direction(rng), kT), b(0.99 * kT * testing::random_direction(rng), kT);
    const auto r = cancellation_check(a, b, 1e-9);
    CHECK_MESSAGE(r.holds, "residuals " << r.left_residual << " " << r.right_residual);
  }
}

TEST_CASE("Jacobian and measure factor") {
  std::mt19937_64 rng(15);
  const G y = random_element(rng), z = random_element(rng);
  CHECK(rel_err(boxminus_jacobian(z, kZero), 1.0) < 1e-15);
  const double b = 1 - y.y.squaredNorm() / (kT * kT);
  CHECK(rel_err(boxminus_jacobian(kZero, y), b * b * b) < 1e-15);
  CHECK(rel_err(measure_factor(z, kZero), 1.0) < 1e-15);
  CHECK(rel_err(measure_factor(kZero, y), 1.0) < 1e-15);

  for (int i = 0; i < 500; ++i) {
    const G zz = random_element(rng), yy = random_element(rng);
    const double cz = 1 - zz.y.squaredNorm() / (kT * kT);
    const double cw = 1 - cosub(zz, yy).y.squaredNorm() / (kT * kT);
    const double chain = boxminus_jacobian(zz, yy) * std::pow(cz / cw, 3);
    CHECK(rel_err(measure_factor(zz, yy), chain) < 1e-10);
  }

  const auto fd = jacobian_suite(200, 42);
  CHECK(fd.cases == 200);
  CHECK_MESSAGE(fd.holds(), "worst " << fd.max_residual);
}

TEST_CASE("eigenfunction") {
  EigenParams<double> ep;
  ep.lambda = 1.7;
  ep.xi = Vec3<double>(0, 0.6, 0.8);
  CHECK(std::abs(eigenfunction(ep, Vec3<double>(Vec3<double>::Zero())) - 1.0) < 1e-15);
  ep.lambda = 0;
  const auto e0 = eigenfunction(ep, Vec3<double>(0.3, -0.2, 0.9));
  CHECK(e0.imag() == 0.0);
  CHECK(e0.real() > 0);
  ep.xi = Vec3<double>(1, 1, 0);
  CHECK_THROWS_AS(eigenfunction(ep, Vec3<double>(Vec3<double>::Zero())), hypfrac::DomainError);

  SUBCASE("spherical average is the radial eigenfunction") {
    // At |y| = t tanh(r/2) the average over directions is sin(lambda r)/(lambda sinh r), which solves
    // f'' + 2 coth(r) f' + (lambda^2 + 1) f = 0.
    EigenParams<double> p;
    p.lambda = 1.3;
    p.xi = Vec3<double>::UnitZ();
    hypfrac::QuadratureConfig cfg;
    auto average = [&](double r) {
      const double rho = kT * std::tanh(r / 2);
      auto f = [&](double c) {
        return eigenfunction(p, Vec3<double>(rho * std::sqrt(1 - c * c), 0, rho * c)).real();
      };
      return hypfrac::quad::smooth(f, -1.0, 1.0, cfg).value / 2;
    };
    const double h = 1e-3;
    for (double r : {0.3, 0.8, 1.5, 2.2}) {
      const double f0 = average(r), fp = average(r + h), fm = average(r - h);
      CHECK(rel_err(f0, std::sin(p.lambda * r) / (p.lambda * std::sinh(r))) < 1e-10);
      const double residual = (fp + fm - 2 * f0) / (h * h) + 2 / std::tanh(r) * (fp - fm) / (2 * h) +
                              (p.lambda * p.lambda + 1) * f0;
      CHECK(std::abs(residual) < 1e-5);
    }
  }
}

TEST_CASE("e_factor") {
  std::mt19937_64 rng(16);
  const Vec3<double> xi = testing::random_direction(rng);
  const Vec3<double> z = random_element(rng).y;
  CHECK(std::abs(e_factor(2.1, xi, Vec3<double>(Vec3<double>::Zero()), z, kT) - 1.0) < 1e-14);
  const auto e0 = e_factor(0.0, xi, random_element(rng).y, z, kT);
  CHECK(e0.imag() == 0.0);
  CHECK(e0.real() > 0);

  for (int i = 0; i < 200; ++i) {
    const Eigen::Matrix3d T = Eigen::Quaterniond::UnitRandom().toRotationMatrix();
    const Vec3<double> y = random_element(rng, 0.9).y, zz = random_element(rng, 0.9).y, x = testing::random_direction(rng);
    const double lambda = testing::uniform(rng, -4.0, 4.0);
    const auto lhs = e_factor(lambda, Vec3<double>(T * x), y, Vec3<double>(T * zz), kT);
    const auto rhs = e_factor(lambda, x, Vec3<double>(T.transpose() * y), zz, kT);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("sphere integral of E") {
  std::mt19937_64 rng(17);
  hypfrac::QuadratureConfig cfg;
  for (int i = 0; i < 20; ++i) {
    const double lambda = testing::uniform(rng, 0.2, 3.0), r = testing::uniform(rng, 0.2, 1.6);
    const Vec3<double> z = random_element(rng, 0.8).y, xi = testing::random_direction(rng);
    const auto v = sphere_integral_E(lambda, r, z, xi, kT, cfg);
    CHECK(std::abs(v.imag()) <= 1e-8);
    CHECK(std::abs(v.real() - sphere_integral_E_closed(lambda, r, kT)) <= 1e-7);
  }
  SUBCASE("small lambda limit") {
    const double r = 0.9, d = std::log((kT + r) / (kT - r));
    const double limit = 4 * std::numbers::pi * (kT / r - r / kT) * d / kT;
    CHECK(rel_err(sphere_integral_E_closed(0.0, r, kT), limit) < 1e-15);
    CHECK(rel_err(sphere_integral_E_closed(1e-6, r, kT), limit) < 1e-11);
  }
  CHECK_THROWS_AS(sphere_integral_E(1.0, 2.5, Vec3<double>(Vec3<double>::Zero()), Vec3<double>(Vec3<double>::UnitX()), kT, cfg),
                  hypfrac::DomainError);
}

TEST_CASE("property suite") {
  SuiteOptions opt;
  const auto results = algebra_suite(opt);
  for (const auto& p : results) {
    CHECK(p.cases == 1000);
    CHECK_MESSAGE(p.holds(), p.name << " residual " << p.max_residual);
  }
  const auto again = algebra_suite(opt);
  for (std::size_t i = 0; i < results.size(); ++i) CHECK(results[i].max_residual == again[i].max_residual);
}
