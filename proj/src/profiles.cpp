#include "hypfrac/profiles.hpp"

#include <cmath>
#include <memory>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "hypfrac/errors.hpp"

namespace hypfrac::ops {

RadialProfile::RadialProfile(std::string name, Fn f, std::optional<double> far_value, double settle_radius,
                             std::vector<double> kinks, Smoothness smoothness, Fn length_scale)
    : name_(std::move(name)), f_(std::move(f)), far_value_(far_value), settle_(settle_radius),
      kinks_(std::move(kinks)), smoothness_(smoothness), length_(std::move(length_scale)) {
  if (!f_) throw DomainError("RadialProfile: empty function");
  if (far_value_ && !(settle_ > 0)) throw DomainError("RadialProfile: settle radius must be positive");
}

double RadialProfile::far_value() const {
  if (!far_value_) throw DomainError("RadialProfile '" + name_ + "' is unbounded");
  return *far_value_;
}

RadialProfile gaussian_bump(double amplitude, double width) {
  if (!(width > 0)) throw DomainError("gaussian_bump: width must be positive");
  // exp(-x^2) < 1e-18 beyond x = 6.44
  const double settle = 6.44 * width;
  return RadialProfile(
      "gaussian-bump", [=](double r) { return amplitude * std::exp(-(r * r) / (width * width)); }, 0.0, settle, {},
      Smoothness::Cinf, [=](double) { return width; });
}

RadialProfile polynomial_bump(double amplitude, double support, int power) {
  if (!(support > 0) || power < 1) throw DomainError("polynomial_bump: need support > 0 and power >= 1");
  return RadialProfile(
      "polynomial-bump",
      [=](double r) {
        if (r >= support) return 0.0;
        const double q = r / support;
        return amplitude * std::pow(1 - q * q, power);
      },
      0.0, support, {support}, power >= 3 ? Smoothness::C2 : Smoothness::C0,
      [=](double) { return support; });
}

RadialProfile paraboloid(double c, double R) {
  if (!(R > 0)) throw DomainError("paraboloid: R must be positive");
  return RadialProfile(
      "paraboloid", [=](double r) { return c - r * r / (2 * R * R); }, std::nullopt, 0.0, {}, Smoothness::Cinf);
}

RadialProfile tabulated(double spacing, std::vector<double> values) {
  if (!(spacing > 0) || values.size() < 4) throw DomainError("tabulated: need spacing > 0 and at least 4 values");
  const double last = values.back();
  const double end = spacing * static_cast<double>(values.size() - 1);
  // Radial symmetry forces u'(0) = 0; the right end is matched to the constant tail.
  auto spline = std::make_shared<const boost::math::interpolators::cardinal_cubic_b_spline<double>>(values.begin(), values.end(), 0.0,
                                                                             spacing, 0.0, 0.0);
  return RadialProfile(
      "tabulated", [=](double r) { return r >= end ? last : (*spline)(r); }, last, end, {end}, Smoothness::C2,
      [=](double) { return 4 * spacing; });
}

namespace {
double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}
} // namespace

RadialProfile make_profile(const std::string& name, const std::map<std::string, double>& params) {
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : params) {
      bool ok = false;
      for (const char* a : keys) ok = ok || k == a;
      if (!ok) throw DomainError("profile '" + name + "': unknown parameter '" + k + "'");
    }
  };
  if (name == "gaussian-bump") {
    allow({"amplitude", "width"});
    return gaussian_bump(param(params, "amplitude", 1.0), param(params, "width", 1.0));
  }
  if (name == "polynomial-bump") {
    allow({"amplitude", "support", "power"});
    return polynomial_bump(param(params, "amplitude", 1.0), param(params, "support", 2.0),
                           static_cast<int>(param(params, "power", 4.0)));
  }
  if (name == "paraboloid") {
    allow({"c", "R"});
    return paraboloid(param(params, "c", 0.0), param(params, "R", 1.0));
  }
  throw DomainError("unknown profile family '" + name + "'");
}

} // namespace hypfrac::ops
