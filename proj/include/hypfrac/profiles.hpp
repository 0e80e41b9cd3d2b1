#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hypfrac::ops {

enum class Smoothness { C0, C2, Cinf };

// Radial function r -> u(r) about the origin. Bounded profiles carry a far value
// that u attains (to rounding) beyond settle_radius().
class RadialProfile {
public:
  using Fn = std::function<double(double)>;

  RadialProfile(std::string name, Fn f, std::optional<double> far_value, double settle_radius,
                std::vector<double> kinks, Smoothness smoothness, Fn length_scale = {});

  double operator()(double r) const { return f_(r); }
  const std::string& name() const { return name_; }
  bool bounded() const { return far_value_.has_value(); }
  double far_value() const;
  double settle_radius() const { return settle_; }
  const std::vector<double>& kinks() const { return kinks_; }
  Smoothness smoothness() const { return smoothness_; }
  // Distance over which u changes appreciably near r; 1 unless the family says otherwise.
  double length_scale(double r) const { return length_ ? length_(r) : 1.0; }

private:
  std::string name_;
  Fn f_;
  std::optional<double> far_value_;
  double settle_;
  std::vector<double> kinks_;
  Smoothness smoothness_;
  Fn length_;
};

// a exp(-r^2/w^2)
RadialProfile gaussian_bump(double amplitude = 1.0, double width = 1.0);
// a (1 - (r/s)^2)^p on [0, s), zero beyond; C^{p-1} at r = s.
RadialProfile polynomial_bump(double amplitude, double support, int power);
// c - r^2/(2 R^2); unbounded.
RadialProfile paraboloid(double c, double R);
// Cubic B-spline through uniformly spaced samples starting at r = 0; constant beyond the last.
RadialProfile tabulated(double spacing, std::vector<double> values);

// Built-in family by name with numeric parameters; unknown names or keys throw DomainError.
RadialProfile make_profile(const std::string& name, const std::map<std::string, double>& params);

} // namespace hypfrac::ops
