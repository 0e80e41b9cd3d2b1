#include "hypfrac/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hypfrac/errors.hpp"

namespace hypfrac::ops {
namespace {

const geometry::ModelParams<double> kModel = geometry::ModelParams<double>::from_tau(1.0);

double dist(const Point& a, const Point& b) { return geometry::distance(a, b, kModel); }

} // namespace

std::vector<Point> polar_grid(double radius, int n_r, int n_theta, int n_phi) {
  if (!(radius > 0) || n_r < 1 || n_theta < 1 || n_phi < 1) throw DomainError("polar_grid: invalid grid shape");
  std::vector<Point> out{geometry::hyper_origin(kModel)};
  for (int i = 1; i <= n_r; ++i) {
    const double r = radius * i / n_r;
    for (int j = 0; j < n_theta; ++j) {
      const double theta = std::numbers::pi * (j + 0.5) / n_theta;
      for (int k = 0; k < n_phi; ++k) {
        const double phi = 2 * std::numbers::pi * k / n_phi;
        const geometry::Vec3<double> w(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                       std::cos(theta));
        out.push_back(geometry::polar_point(r, w, kModel));
      }
    }
  }
  return out;
}

Envelope::Envelope(std::vector<EnvelopeSample> samples, std::vector<Point> vertices, double R, double spacing)
    : samples_(std::move(samples)), vertices_(std::move(vertices)), R_(R) {
  if (samples_.empty() || vertices_.empty()) throw DomainError("Envelope: empty sample or vertex grid");
  if (!(R > 0) || !(spacing >= 0)) throw DomainError("Envelope: need R > 0 and spacing >= 0");
  for (const auto& s : samples_)
    if (!std::isfinite(s.value)) throw DomainError("Envelope: sample values must be finite");
  tol_ = 1e-8 + 2 * spacing * spacing;
  const double k = 1 / (2 * R * R);
  const std::size_t N = samples_.size(), M = vertices_.size();

  // q(i, j) = d^2(z_i, y_j)/(2R^2), shared by both passes so the minorant property is exact up to
  // one rounding.
  std::vector<double> q(N * M);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      const double d = dist(samples_[i].point, vertices_[j]);
      q[i * M + j] = k * d * d;
    }

  c_.assign(M, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < M; ++j) c_[j] = std::min(c_[j], samples_[i].value + q[i * M + j]);

  gamma_.resize(N);
  contact_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    double g = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < M; ++j) g = std::max(g, c_[j] - q[i * M + j]);
    const double u = samples_[i].value;
    max_raw_excess_ = std::max(max_raw_excess_, g - u);
    gamma_[i] = std::min(g, u);
    contact_[i] = u - gamma_[i] <= tol_;
  }
}

double Envelope::paraboloid(std::size_t vertex, const Point& z) const {
  const double d = dist(z, vertices_.at(vertex));
  return c_[vertex] - d * d / (2 * R_ * R_);
}

std::size_t Envelope::active_vertex(const Point& z) const {
  std::size_t best = 0;
  double g = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < vertices_.size(); ++j) {
    const double p = paraboloid(j, z);
    if (p > g) {
      g = p;
      best = j;
    }
  }
  return best;
}

double Envelope::operator()(const Point& z) const { return paraboloid(active_vertex(z), z); }

std::size_t Envelope::contact_count() const {
  return static_cast<std::size_t>(std::count(contact_.begin(), contact_.end(), std::uint8_t{1}));
}

ConvexityReport convexity_check(const Envelope& env, std::size_t count, double max_step, std::uint64_t seed) {
  if (count == 0 || !(max_step > 0)) throw DomainError("convexity_check: need count > 0 and max_step > 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_z(0, env.samples().size() - 1);
  std::uniform_int_distribution<std::size_t> pick_y(0, env.vertices().size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  const double R = env.R();

  ConvexityReport rep;
  for (std::size_t n = 0; n < count; ++n) {
    const Point& z = env.samples()[pick_z(rng)].point;
    const std::size_t y = pick_y(rng);
    const double s = max_step * (0.05 + 0.95 * unit(rng));
    const geometry::Vec4<double> w(normal(rng), normal(rng), normal(rng), normal(rng));
    const Point z1 = geometry::geodesic_point(z, w, s / 2, kModel);
    const Point z2 = geometry::geodesic_point(z, w, -s / 2, kModel);

    auto f = [&](const Point& p) { return env(p) - env.paraboloid(y, p); };
    const std::size_t active = env.active_vertex(z);
    const double D = std::max(dist(env.vertices()[y], z), dist(env.vertices()[active], z));
    ConvexityTriple t;
    t.vertex = y;
    t.step = s;
    t.lhs = f(z);
    t.rhs = (f(z1) + f(z2)) / 2 + geometry::aux_H(D + s) * s * s / (8 * R * R);
    // Rounding in the distances is amplified by the 1/(2R^2) d^2 terms.
    const double slack = 1e-12 * (1 + std::abs(t.lhs) + std::abs(t.rhs));
    t.margin = t.rhs - t.lhs + slack;
    rep.worst_margin = n ? std::min(rep.worst_margin, t.margin) : t.margin;
    rep.triples.push_back(t);
  }
  rep.holds = rep.worst_margin >= 0;
  return rep;
}

} // namespace hypfrac::ops
