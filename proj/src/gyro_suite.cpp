#include "hypfrac/gyro_suite.hpp"

#include <random>

#include "hypfrac/gyro.hpp"

namespace hypfrac::gyro {

namespace {

using G = GyroElement<double>;

class Sampler {
public:
  Sampler(std::uint64_t seed, double t) : rng_(seed), t_(t) {}

  Vec3<double> direction() {
    Vec3<double> v;
    do {
      v = Vec3<double>(normal_(rng_), normal_(rng_), normal_(rng_));
    } while (v.norm() < 1e-8);
    return v.normalized();
  }

  // Uniform in the ball of radius fraction * t.
  G inside(double fraction) { return G(fraction * t_ * std::cbrt(unit_(rng_)) * direction(), t_); }
  G on_shell(double fraction) { return G(fraction * t_ * direction(), t_); }
  double uniform(double a, double b) { return a + (b - a) * unit_(rng_); }

private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  double t_;
};

double gap(const G& a, const G& b) { return (a.y - b.y).norm() / a.t; }

void record(PropertyResult& p, double r) {
  ++p.cases;
  if (!(r <= p.max_residual)) p.max_residual = r; // NaN sticks
}

} // namespace

std::vector<PropertyResult> algebra_suite(const SuiteOptions& opt) {
  if (opt.cases < 1) throw DomainError("algebra_suite: need at least one case");
  Sampler s(opt.seed, opt.t);
  const G zero(Vec3<double>::Zero(), opt.t);

  auto make = [&](const char* name, double tol) {
    PropertyResult p;
    p.name = name;
    p.tol = tol;
    return p;
  };
  PropertyResult identity = make("left_identity", opt.tol), inverse = make("left_inverse", opt.tol),
                 assoc = make("gyroassociativity", opt.tol), loop = make("left_loop", opt.tol),
                 comm = make("gyrocommutativity", opt.tol), isometry = make("gyration_isometry", opt.tol),
                 left = make("left_cancellation", opt.tol), right = make("right_cancellation", opt.tol),
                 left_b = make("left_cancellation_boundary", opt.boundary_tol),
                 right_b = make("right_cancellation_boundary", opt.boundary_tol),
                 closed = make("cosub_closed_form", opt.tol),
                 composed = make("gyration_composition", opt.tol), transport = make("transport_identity", opt.tol);

  for (int i = 0; i < opt.cases; ++i) {
    const G x = s.inside(opt.max_fraction), y = s.inside(opt.max_fraction), z = s.inside(opt.max_fraction);
    record(identity, gap(mobius_add(zero, x), x));
    record(inverse, gap(mobius_add(gyro_neg(x), x), zero));
    const G g = gyration(x, y, z);
    record(assoc, gap(mobius_add(x, mobius_add(y, z)), mobius_add(mobius_add(x, y), g)));
    record(loop, gap(g, gyration(mobius_add(x, y), y, z)));
    record(comm, gap(mobius_add(x, y), gyration(x, y, mobius_add(y, x))));
    record(composed, gap(g, gyration_composition(x, y, z)));
    record(isometry, std::abs(g.y.norm() - z.y.norm()) / opt.t);

    const auto c = cancellation_check(x, y, opt.tol);
    record(left, c.left_residual);
    record(right, c.right_residual);
    const G a = s.on_shell(opt.boundary_fraction), b = s.on_shell(opt.boundary_fraction);
    const auto cb = cancellation_check(a, b, opt.boundary_tol);
    record(left_b, cb.left_residual);
    record(right_b, cb.right_residual);

    record(closed, gap(cosub(z, y), cosub_composition(z, y)));

    // e_{-lambda}(z [-] y) = P^{(2 - i lambda t)/2} e_{-lambda}(z)
    EigenParams<double> ep;
    ep.lambda = -s.uniform(0.1, 4.0);
    ep.xi = s.direction();
    ep.t = opt.t;
    const auto lhs = eigenfunction(ep, cosub(z, y).y);
    const auto rhs = detail::real_base_power(transport_base(ep.xi, y.y, z.y, opt.t), ep.lambda * opt.t) *
                     eigenfunction(ep, z.y);
    record(transport, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return {identity, inverse, assoc, loop, comm, isometry, left, right, left_b, right_b, closed, composed, transport};
}

PropertyResult jacobian_suite(int pairs, std::uint64_t seed, double t, double tol) {
  if (pairs < 1) throw DomainError("jacobian_suite: need at least one pair");
  Sampler s(seed, t);
  PropertyResult p;
  p.name = "boxminus_jacobian";
  p.tol = tol;
  const double h = 1e-5 * t;
  for (int i = 0; i < pairs; ++i) {
    const G z = s.inside(0.9), y = s.inside(0.9);
    Eigen::Matrix3d J;
    for (int k = 0; k < 3; ++k) {
      Vec3<double> e = Vec3<double>::Zero();
      e(k) = h;
      const Vec3<double> d1 = (cosub(G(z.y + e, t), y).y - cosub(G(z.y - e, t), y).y) / (2 * h);
      const Vec3<double> d2 = (cosub(G(z.y + e / 2, t), y).y - cosub(G(z.y - e / 2, t), y).y) / h;
      J.col(k) = (4 * d2 - d1) / 3;
    }
    const double exact = boxminus_jacobian(z, y);
    record(p, std::abs(J.determinant() - exact) / exact);
  }
  return p;
}

} // namespace hypfrac::gyro
