#include <doctest.h>

#include "hypfrac/barrier.hpp"
#include "hypfrac/errors.hpp"
#include "hypfrac/geometry.hpp"
#include "support.hpp"

using namespace hypfrac::ops;

TEST_CASE("barrier values") {
  BarrierSpec spec;
  spec.alpha = 3;
  const double floor = -std::pow(spec.kappa * spec.delta / 20, -2 * spec.alpha);
  for (double d = 0; d < 12; d += 0.01) {
    const double v = barrier_value(spec, d);
    CHECK(v >= floor);
    CHECK(v < 0);
    if (d >= 5 * spec.R) CHECK(v >= -1);
    const double s = barrier_shifted_value(spec, d);
    if (d >= 3 * spec.R) CHECK(s >= 0);
    if (d <= 3 * spec.R) CHECK(s <= 1e-12);
  }
  CHECK(barrier_value(spec, 0.5 * spec.cap_radius()) == floor);
  CHECK(barrier_value(spec, 5.0) == -1.0);

  const auto v = barrier_profile(spec);
  CHECK(v.bounded());
  CHECK(std::abs(v(v.settle_radius())) < 1e-15);
  const auto samples = default_barrier_samples(spec);
  CHECK(samples.size() == 10);
  for (double r : samples) {
    CHECK(r > spec.delta * spec.R / 4);
    CHECK(r < 5 * spec.R);
  }

  spec.kappa = 0.3;
  CHECK_THROWS_AS(spec.validate(), hypfrac::DomainError);
  spec.kappa = 0.25;
  spec.alpha = 1e4;
  CHECK_THROWS_AS(spec.validate(), hypfrac::OverflowError);
}

TEST_CASE("arccos inequalities") {
  int points = 0;
  for (double alpha : {0.5, 2.0, 8.0, 32.0, 64.0})
    for (double R0 : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double tmin = 1 / std::cosh(R0);
      for (double t : {tmin * (1 + 1e-6), (tmin + 1) / 2, 1.0, 3.0}) {
        const auto r = arccos_inequalities(alpha, R0, t);
        ++points;
        CHECK_MESSAGE(r.holds, "alpha " << alpha << " R0 " << R0 << " t " << t);
        CHECK(std::isfinite(r.first.lhs));
        CHECK(std::isfinite(r.third.rhs));
      }
    }
  CHECK(points == 100);
  SUBCASE("equality at t = 1") {
    const auto r = arccos_inequalities(2.0, 1.0, 1.0);
    CHECK(std::abs(r.first.lhs) < 1e-15);
    CHECK(r.first.rhs == 0.0);
  }
  SUBCASE("random points") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 2000; ++i) {
      const double alpha = testing::uniform(rng, 0.1, 40.0), R0 = testing::uniform(rng, 0.05, 5.0);
      const double tmin = 1 / std::cosh(R0);
      const double t = tmin + testing::uniform(rng, 1e-6, 4.0);
      CHECK(arccos_inequalities(alpha, R0, t).holds);
    }
  }
  CHECK_THROWS_AS(arccos_inequalities(2.0, 1.0, 0.5), hypfrac::DomainError);
  CHECK_THROWS_AS(arccos_inequalities(-2.0, 1.0, 1.0), hypfrac::DomainError);
}

TEST_CASE("supersolution margin for a large exponent") {
  hypfrac::QuadratureConfig cfg;
  BarrierSpec spec;
  spec.alpha = 8;
  const EllipticityBounds bounds{1.0, 2.0};
  const auto rep = barrier_check(spec, {0.3, 1.5, 4.0}, bounds, cfg);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    CHECK(row.margin <= 0);
    CHECK(row.value == barrier_value(spec, row.R0));
  }
  CHECK(rep.holds);
  CHECK(rep.worst_margin <= 0);
  CHECK_THROWS_AS(barrier_check(spec, {}, bounds, cfg), hypfrac::DomainError);
}
