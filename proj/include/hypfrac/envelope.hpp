#pragma once

#include <cstdint>
#include <vector>

#include "hypfrac/geometry.hpp"

namespace hypfrac::ops {

using Point = geometry::HyperPoint<double>;

struct EnvelopeSample {
  Point point;
  double value = 0.0;
};

// Geodesic polar grid about the origin (tau = 1): the origin plus n_r shells of radius
// radius*i/n_r, each with n_theta polar and n_phi azimuthal directions.
std::vector<Point> polar_grid(double radius, int n_r, int n_theta, int n_phi);

// Gamma(z) = max_y (c_y - d^2(z,y)/(2R^2)) with c_y = min_samples (u + d^2(., y)/(2R^2)).
class Envelope {
public:
  // spacing is the grid step entering the contact tolerance 1e-8 + 2 spacing^2.
  Envelope(std::vector<EnvelopeSample> samples, std::vector<Point> vertices, double R, double spacing);

  // Envelope at an arbitrary point, with the vertex attaining the max.
  double operator()(const Point& z) const;
  std::size_t active_vertex(const Point& z) const;
  double paraboloid(std::size_t vertex, const Point& z) const;

  const std::vector<EnvelopeSample>& samples() const { return samples_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<double>& vertex_constants() const { return c_; }
  // Gamma at the samples, clamped to u; the raw max over vertices can exceed u by rounding.
  const std::vector<double>& values() const { return gamma_; }
  const std::vector<std::uint8_t>& contact() const { return contact_; }
  std::size_t contact_count() const;
  double max_raw_excess() const { return max_raw_excess_; }
  double tolerance() const { return tol_; }
  double R() const { return R_; }

private:
  std::vector<EnvelopeSample> samples_;
  std::vector<Point> vertices_;
  double R_, tol_;
  std::vector<double> c_, gamma_;
  std::vector<std::uint8_t> contact_;
  double max_raw_excess_ = 0.0;
};

struct ConvexityTriple {
  std::size_t vertex = 0;
  double step = 0.0;   // |xi|
  double lhs = 0.0;    // (Gamma - P_y)(z)
  double rhs = 0.0;    // endpoint average plus (1/(8R^2)) H(D + |xi|) |xi|^2
  double margin = 0.0; // rhs - lhs
};

struct ConvexityReport {
  std::vector<ConvexityTriple> triples;
  double worst_margin = 0.0;
  bool holds = false;
};

// Midpoint (t = 1/2) semiconvexity of Gamma - P_y along random geodesic segments z +/- xi/2 with
// z among the samples, y among the vertices and |xi| <= max_step. D = max(d(y,z), d(y*,z)) with
// y* the vertex active at z.
ConvexityReport convexity_check(const Envelope& env, std::size_t count, double max_step, std::uint64_t seed);

} // namespace hypfrac::ops
