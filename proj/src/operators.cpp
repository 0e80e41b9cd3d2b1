#include "hypfrac/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "hypfrac/geometry.hpp"
#include "hypfrac/kernel.hpp"
#include "hypfrac/scale.hpp"

namespace hypfrac::ops {
namespace {

constexpr double kPi = std::numbers::pi;

double weigh(double d, Weights w) { return d >= 0 ? w.pos * d : w.neg * d; }

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Axial cosines in (0,1) at which one of d(-), d(+) crosses a kink k of u: there
// 1 - |w| = |1 - q| with q = 2 (sinh^2(k/2) - sinh^2((r-R0)/2)) / (sinh r sinh R0).
std::vector<double> omega_breaks(const RadialProfile& u, double R0, double r) {
  std::vector<double> out;
  if (R0 == 0 || r == 0 || r > 700) return out;
  const double S = std::sinh(r) * std::sinh(R0), h = (r - R0) / 2;
  for (double k : u.kinks()) {
    const double q = 2 * std::sinh(k / 2 - h) * std::sinh(k / 2 + h) / S;
    if (q > 0 && q < 2) {
      const double c = std::abs(1 - q);
      if (c > 0 && c < 1) out.push_back(c);
    }
  }
  return out;
}

// int_0^1 P(g(w)) dw, split at the given cosines and, for unequal weights, at sign changes of g.
// Polynomial integrands (the near-field fit) use a fixed Gauss rule per piece instead.
template <class G>
double omega_integral(G&& g, std::vector<double> breaks, Weights w, const QuadratureConfig& cfg,
                      bool polynomial = false, const QuadratureConfig* accept = nullptr) {
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  breaks = sorted_unique(std::move(breaks));
  if (w.pos != w.neg) {
    std::vector<double> extra;
    constexpr int scan = 64;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double p = breaks[i], q = breaks[i + 1];
      double x0 = p, g0 = g(p);
      for (int j = 1; j <= scan; ++j) {
        const double x1 = p + (q - p) * j / scan, g1 = g(x1);
        if ((g0 < 0 && g1 > 0) || (g0 > 0 && g1 < 0)) {
          double lo = x0, hi = x1;
          const bool neg_lo = g0 < 0;
          for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
            const double mid = (lo + hi) / 2;
            ((g(mid) < 0) == neg_lo ? lo : hi) = mid;
          }
          extra.push_back((lo + hi) / 2);
        }
        x0 = x1;
        g0 = g1;
      }
    }
    breaks.insert(breaks.end(), extra.begin(), extra.end());
    breaks = sorted_unique(std::move(breaks));
  }
  auto f = [&](double x) { return weigh(g(x), w); };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (polynomial)
      sum += boost::math::quadrature::gauss<double, 30>::integrate(f, breaks[i], breaks[i + 1]);
    else
      sum += quad::smooth(f, breaks[i], breaks[i + 1], cfg, accept).value;
  }
  return sum;
}

// int_a^b F, in log r when the segment spans more than a factor of four.
template <class F>
double radial_segment(F&& F_, double a, double b, const QuadratureConfig& cfg) {
  if (b / a > 4) {
    auto g = [&](double s) {
      const double r = std::exp(s);
      return F_(r) * r;
    };
    return quad::smooth(g, std::log(a), std::log(b), cfg).value;
  }
  return quad::smooth(F_, a, b, cfg).value;
}

void check_point(const RadialProfile& u, double R0, double gamma) {
  if (!(R0 >= 0)) throw DomainError("operator: R0 must be nonnegative");
  if (!(gamma > 0 && gamma < 1)) throw DomainError("operator: gamma must lie in (0,1)");
  if (!u.bounded()) throw DomainError("operator: profile '" + u.name() + "' is unbounded");
  for (double k : u.kinks())
    if (std::abs(k - R0) < 1e-8) throw DomainError("operator: profile is not C2 at the evaluation point");
}

} // namespace

double second_difference(const RadialProfile& u, double R0, double r, double omega1) {
  const auto [dm, dp] = geometry::law_of_cosines(r, R0, omega1);
  return (u(dm) + u(dp) - 2 * u(R0)) / 2;
}

NonlocalParts nonlocal_parts(const RadialProfile& u, double R0, double gamma, Weights w,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  check_point(u, R0, gamma);
  if (!(w.pos > 0 && w.neg > 0)) throw DomainError("operator: weights must be positive");

  NonlocalParts out;
  // Wide enough that rounding in delta ~ eps_mach |u| stays below rel_tol, narrow enough that the
  // neglected r^8 term does too.
  double eps = std::clamp(std::pow(cfg.rel_tol, 1.0 / 6), 0.01, 0.1) * std::min(1.0, u.length_scale(R0));
  for (double k : u.kinks()) eps = std::min(eps, 0.5 * std::abs(k - R0));
  out.eps = eps;
  out.r_star = std::max(u.settle_radius() + R0, 2 * eps);

  const double u0 = u(R0);
  const kernel::KernelSpec ks{gamma, 1.0};
  // The outer rule sees inner-integral error as noise, so inner integrals run tighter.
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-14);
  inner.abs_tol = cfg.abs_tol * 1e-2;

  // Near field: delta(r, w) = a r^2 + b r^4 + c r^6 + O(r^8), fitted at r = eps, eps/2, eps/4, and
  // integrated against the moments m_k = int_0^eps (r/eps)^{2k} K sinh^2 dr.
  const double m1 = scale::i0_closed(eps, gamma) / (4 * kPi * eps * eps);
  auto moment = [&](int k) {
    auto f = [&](double x) {
      return x > 0 ? std::exp(2 * k * std::log(x) + kernel::log_kernel_sinh2(ks, eps * x)) : 0.0;
    };
    return eps * quad::endpoint_singular(f, 0.0, 1.0, cfg).value;
  };
  const double m2 = moment(2), m3 = moment(3);
  Eigen::Matrix3d fit;
  fit << 1, 1, 1, 1.0 / 4, 1.0 / 16, 1.0 / 64, 1.0 / 16, 1.0 / 256, 1.0 / 4096;
  const Eigen::Matrix3d fit_inv = fit.inverse();
  auto near_g = [&](double om) {
    const Eigen::Vector3d d(second_difference(u, R0, eps, om), second_difference(u, R0, eps / 2, om),
                            second_difference(u, R0, eps / 4, om));
    const Eigen::Vector3d c = fit_inv * d;
    return c(0) * m1 + c(1) * m2 + c(2) * m3;
  };
  out.near = 4 * kPi * omega_integral(near_g, {}, w, cfg, true);

  // Mid range.
  std::vector<double> rb{eps, out.r_star};
  for (double k : u.kinks())
    for (double c : {std::abs(k - R0), k + R0})
      if (c > eps && c < out.r_star) rb.push_back(c);
  rb = sorted_unique(std::move(rb));
  auto F = [&](double r) {
    const double lw = kernel::log_kernel_sinh2(ks, r);
    auto g = [&](double om) {
      const auto [dm, dp] = geometry::law_of_cosines(r, R0, om);
      return (u(dm) + u(dp)) / 2 - u0;
    };
    return 4 * kPi * std::exp(lw) * omega_integral(g, omega_breaks(u, R0, r), w, inner, false, &cfg);
  };
  for (std::size_t i = 0; i + 1 < rb.size(); ++i) out.mid += radial_segment(F, rb[i], rb[i + 1], cfg);

  // Tail: both distances exceed the settle radius.
  out.tail = weigh(u.far_value() - u0, w) * scale::iinf_closed(out.r_star, gamma) / (out.r_star * out.r_star);
  out.total = out.near + out.mid + out.tail;
  return out;
}

double apply_fraclap(const RadialProfile& u, double R0, double gamma, const QuadratureConfig& cfg) {
  return nonlocal_parts(u, R0, gamma, {1.0, 1.0}, cfg).total;
}

double pucci_plus(const RadialProfile& u, double R0, double gamma, const EllipticityBounds& b,
                  const QuadratureConfig& cfg) {
  b.validate();
  return nonlocal_parts(u, R0, gamma, {b.lambda_hi, b.lambda_lo}, cfg).total;
}

double pucci_minus(const RadialProfile& u, double R0, double gamma, const EllipticityBounds& b,
                   const QuadratureConfig& cfg) {
  b.validate();
  return nonlocal_parts(u, R0, gamma, {b.lambda_lo, b.lambda_hi}, cfg).total;
}

double laplace_beltrami_stencil(const RadialProfile& u, double R0, double h) {
  if (!(R0 >= 0) || !(h > 0)) throw DomainError("laplace_beltrami_stencil: need R0 >= 0, h > 0");
  if (R0 == 0) return 3 * 2 * (u(h) - u(0.0)) / (h * h);
  const double up = u(R0 + h), um = u(std::abs(R0 - h)), u0 = u(R0);
  return (up - 2 * u0 + um) / (h * h) + 2 / std::tanh(R0) * (up - um) / (2 * h);
}

// ---------------------------------------------------------------------------------------------

namespace {
constexpr double kPanel = 2.0;
constexpr double kMaxLambda = 400.0;
using Panel = boost::math::quadrature::gauss<double, 40>;

double phi(double lambda, double r) {
  if (r == 0) return 1.0;
  const double s = lambda == 0 ? r : std::sin(lambda * r) / lambda;
  return s / std::sinh(r);
}
} // namespace

SphericalTransform::SphericalTransform(const RadialProfile& u, const QuadratureConfig& cfg) : u_(u), cfg_(cfg) {
  cfg_.validate();
  if (!u_.bounded() || u_.far_value() != 0.0)
    throw DomainError("SphericalTransform: profile must decay to zero");

  // Panels of width 2 until |u^| lambda^2 (lambda^2 + 1) has decayed below truncation_decay of its
  // peak, or |u^| itself is below truncation_decay of its bound 4 pi int |u| r sinh r dr.
  double bound = 0.0;
  {
    auto g = [&](double r) { return std::abs(u_(r)) * r * std::sinh(r); };
    bound = 4 * kPi * quad::smooth(g, 0.0, u_.settle_radius(), cfg_).value;
  }
  double peak = 0.0;
  int quiet = 0;
  for (double a = 0.0; quiet < 2; a += kPanel) {
    if (a >= kMaxLambda) {
      std::ostringstream os;
      os << "SphericalTransform: spectrum of '" << u_.name() << "' not truncated by lambda = " << kMaxLambda;
      throw NumericError(os.str(), a);
    }
    double panel_max = 0.0, panel_abs = 0.0;
    const auto& x = Panel::abscissa();
    const auto& wt = Panel::weights();
    auto add = [&](double lam, double wgt) {
      const double v = forward(lam);
      nodes_.push_back(lam);
      weights_.push_back(wgt);
      values_.push_back(v);
      const double l2 = lam * lam;
      panel_max = std::max(panel_max, std::abs(v) * l2 * (l2 + 1));
      panel_abs = std::max(panel_abs, std::abs(v));
    };
    const double c = a + kPanel / 2, h = kPanel / 2;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) {
        add(c, h * wt[i]);
      } else {
        add(c - h * x[i], h * wt[i]);
        add(c + h * x[i], h * wt[i]);
      }
    }
    peak = std::max(peak, panel_max);
    const bool small = panel_max <= cfg_.truncation_decay * peak || panel_abs <= cfg_.truncation_decay * bound;
    quiet = small ? quiet + 1 : 0;
    cutoff_ = a + kPanel;
  }

  // Calibrate at the largest |u| on a coarse grid, then check elsewhere.
  const double S = u_.settle_radius();
  double r_ref = 0.0, umax = 0.0;
  for (int j = 0; j <= 64; ++j) {
    const double r = S * j / 64;
    if (std::abs(u_(r)) > umax) {
      umax = std::abs(u_(r));
      r_ref = r;
    }
  }
  if (umax == 0) throw DomainError("SphericalTransform: profile vanishes");
  auto one = [](double) { return 1.0; };
  kappa_ = u_(r_ref) / raw_inverse(one, r_ref);
  for (int j = 0; j < 8; ++j) {
    const double r = S * j / 8;
    roundtrip_error_ = std::max(roundtrip_error_, std::abs(kappa_ * raw_inverse(one, r) - u_(r)) / umax);
  }
  if (!(roundtrip_error_ <= kRoundTripTol)) {
    std::ostringstream os;
    os << "SphericalTransform: round trip error " << roundtrip_error_ << " exceeds " << kRoundTripTol;
    throw CalibrationError(os.str(), kappa_, roundtrip_error_);
  }
}

double SphericalTransform::forward(double lambda) const {
  std::vector<double> br{0.0};
  for (double k : u_.kinks())
    if (k > 0 && k < u_.settle_radius()) br.push_back(k);
  br.push_back(u_.settle_radius());
  br = sorted_unique(std::move(br));
  auto f = [&](double r) {
    const double s = lambda == 0 ? r : std::sin(lambda * r) / lambda;
    return u_(r) * std::sinh(r) * s;
  };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) sum += quad::smooth(f, br[i], br[i + 1], cfg_).value;
  return 4 * kPi * sum;
}

double SphericalTransform::raw_inverse(const std::function<double(double)>& m, double r) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double l = nodes_[i];
    sum += weights_[i] * m(l) * values_[i] * phi(l, r) * l * l;
  }
  return sum;
}

double SphericalTransform::inverse(const std::function<double(double)>& m, double r) const {
  if (!(r >= 0)) throw DomainError("SphericalTransform::inverse: r must be nonnegative");
  return kappa_ * raw_inverse(m, r);
}

PlancherelReport SphericalTransform::plancherel() const {
  PlancherelReport rep;
  std::vector<double> br{0.0};
  for (double k : u_.kinks())
    if (k > 0 && k < u_.settle_radius()) br.push_back(k);
  br.push_back(u_.settle_radius());
  br = sorted_unique(std::move(br));
  auto f = [&](double r) {
    const double s = std::sinh(r) * u_(r);
    return s * s;
  };
  for (std::size_t i = 0; i + 1 < br.size(); ++i) rep.physical += quad::smooth(f, br[i], br[i + 1], cfg_).value;
  rep.physical *= 4 * kPi;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    rep.spectral += weights_[i] * values_[i] * values_[i] * nodes_[i] * nodes_[i];
  rep.spectral *= kappa_;
  rep.rel_error = std::abs(rep.spectral - rep.physical) / std::abs(rep.physical);
  return rep;
}

double multiplier_oracle(const RadialProfile& u, double R0, double gamma, const QuadratureConfig& cfg) {
  if (!(gamma > 0 && gamma <= 1)) throw DomainError("multiplier_oracle: gamma must lie in (0,1]");
  SphericalTransform T(u, cfg);
  return T.inverse([gamma](double l) { return -std::pow(l * l + 1, gamma); }, R0);
}

} // namespace hypfrac::ops
