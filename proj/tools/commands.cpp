#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypfrac/barrier.hpp"
#include "hypfrac/errors.hpp"
#include "hypfrac/geometry.hpp"
#include "hypfrac/gyro_suite.hpp"
#include "hypfrac/kernel.hpp"
#include "hypfrac/operators.hpp"
#include "hypfrac/scale.hpp"

namespace hypfrac::cli {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed grid '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw DomainError("malformed grid '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw DomainError("grid range must read lo:hi:n, got '" + text + "'");
    const double lo = number(parts[0]), hi = number(parts[1]), n = number(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e6) throw DomainError("grid count must be a positive integer");
    const auto count = static_cast<int>(n);
    if (count == 1) return {lo};
    for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
    return grid;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) grid.push_back(number(p));
  if (grid.empty() || text.back() == ',') throw DomainError("empty or malformed grid '" + text + "'");
  return grid;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_number(v);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return v;
      },
      c);
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

struct Options {
  std::string command, out, format = "csv";
  std::uint64_t seed = 42;
  double rel_tol = 1e-10, abs_tol = 1e-12;
  bool timing = false;

  std::string lambda_grid = "0,0.5,1,2,4";
  std::string gamma_grid;
  std::string R_grid = "0.1,0.2,0.35,0.5,0.75,1,1.5,2,3,4,5";
  std::string rho_grid = "0.05:20:80";
  double gamma = 0.5, tau = 1.0, t = 2.0;
  double tol = -1;
  int cases = 1000, pairs = 200;
  double R = 1.0, delta = 0.5, kappa = 0.25, alpha_cap = 64, lambda_lo = 1, lambda_hi = 2;
  int samples = 10;
  std::string profile = "gaussian-bump";
  std::vector<std::string> params;
  double R0 = 0.0;
};

QuadratureConfig quad_config(const Options& o) {
  QuadratureConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.abs_tol = o.abs_tol;
  cfg.validate();
  return cfg;
}

double tol_or(const Options& o, double fallback) { return o.tol > 0 ? o.tol : fallback; }

std::string describe(double worst, double tol) {
  std::ostringstream os;
  os.precision(3);
  os << "worst " << worst << " vs tol " << tol;
  return os.str();
}

Report verify_constant(const Options& o) {
  const auto lambdas = parse_grid(o.lambda_grid);
  const auto gammas = parse_grid(o.gamma_grid.empty() ? "0.2,0.5,0.8,0.95" : o.gamma_grid);
  const double tol = tol_or(o, 1e-6);
  const auto cfg = quad_config(o);
  Report r;
  r.columns = {"lambda", "gamma", "t", "value", "expected", "rel_error", "error_estimate", "pass"};
  double worst = 0;
  for (double g : gammas)
    for (double l : lambdas) {
      const auto res = kernel::invariance_integral_detail(l, g, o.t, cfg);
      const double expected = std::pow(l * l + 4 / (o.t * o.t), g);
      const double err = std::abs(res.value - expected) / expected;
      worst = std::max(worst, err);
      r.rows.push_back({l, g, o.t, res.value, expected, err, res.error / expected, err <= tol});
    }
  r.checks.push_back({"invariance_identity", worst <= tol, describe(worst, tol)});
  return r;
}

Report scale_sweep(const Options& o) {
  auto Rs = parse_grid(o.R_grid);
  std::sort(Rs.begin(), Rs.end());
  const auto gammas = parse_grid(o.gamma_grid.empty() ? "0.1,0.3,0.5,0.7,0.9,0.95" : o.gamma_grid);
  const double tol = tol_or(o, 1e-8);
  const auto cfg = quad_config(o);
  Report r;
  r.columns = {"R", "gamma", "I0_closed", "I0_quad", "Iinf_closed", "Iinf_quad", "oracle_rel_error", "r0",
               "mono_I0_R2mg", "mono_I0_R2", "Iinf_bound"};
  double worst = 0;
  bool mono = true;
  for (double g : gammas) {
    const auto rep = scale::monotonicity_report(g, Rs);
    mono = mono && rep.holds;
    for (std::size_t i = 0; i < Rs.size(); ++i) {
      const double R = Rs[i];
      const auto& row = rep.rows[i];
      const double q0 = scale::i0_quadrature(R, g, cfg), qi = scale::iinf_quadrature(R, g, cfg);
      const double err = std::max(std::abs(q0 - row.i0) / row.i0, std::abs(qi - row.iinf) / row.iinf);
      worst = std::max(worst, err);
      r.rows.push_back({R, g, row.i0, q0, row.iinf, qi, err, scale::r0_solve(R, g),
                        row.margin_2mg >= -1e-12, row.margin_2 >= -1e-12, row.margin_inequality >= -1e-12});
    }
  }
  r.checks.push_back({"closed_form_vs_quadrature", worst <= tol, describe(worst, tol)});
  r.checks.push_back({"monotonicity_and_bound", mono, mono ? "all grid points" : "violated"});
  return r;
}

Report kernel_table(const Options& o) {
  auto rhos = parse_grid(o.rho_grid);
  std::sort(rhos.begin(), rhos.end());
  const kernel::KernelSpec spec{o.gamma, o.tau};
  spec.validate();
  Report r;
  r.columns = {"rho", "kernel", "kernel_sinh2", "rho2_kernel_sinh2", "euclidean_ratio", "decreasing"};
  bool positive = true, decreasing = true;
  double prev = 0;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const double rho = rhos[i];
    if (!(rho > 0)) throw DomainError("kernel_table: rho must be positive");
    const double k = kernel::kernel_value(spec, rho);
    const double ks = std::exp(kernel::log_kernel_sinh2(spec, rho));
    const bool dec = i == 0 || k < prev;
    positive = positive && k > 0;
    decreasing = decreasing && dec;
    r.rows.push_back({rho, k, ks, rho * rho * ks, kernel::euclidean_limit_ratio(o.gamma, rho, o.tau), dec});
    prev = k;
  }
  r.checks.push_back({"kernel_positive", positive, ""});
  r.checks.push_back({"kernel_strictly_decreasing", decreasing, ""});
  return r;
}

Report gyro_check(const Options& o) {
  gyro::SuiteOptions so;
  so.cases = o.cases;
  so.seed = o.seed;
  so.t = o.t;
  if (o.tol > 0) so.tol = o.tol;
  Report r;
  r.columns = {"property", "cases", "max_residual", "tol", "pass"};
  auto add = [&](const gyro::PropertyResult& p) {
    r.rows.push_back({p.name, static_cast<long long>(p.cases), p.max_residual, p.tol, p.holds()});
    r.checks.push_back({p.name, p.holds(), describe(p.max_residual, p.tol)});
  };
  for (const auto& p : gyro::algebra_suite(so)) add(p);
  add(gyro::jacobian_suite(o.pairs, o.seed, o.t));
  return r;
}

// alpha x R0 x t grid of 100 points with t above 1/cosh R0.
std::vector<ops::ArccosReport> arccos_grid() {
  std::vector<ops::ArccosReport> out;
  for (double a : {0.5, 2.0, 8.0, 32.0, 64.0})
    for (double R0 : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double tmin = 1 / std::cosh(R0);
      for (double t : {tmin * (1 + 1e-6), (tmin + 1) / 2, 1.0, 3.0}) out.push_back(ops::arccos_inequalities(a, R0, t));
    }
  return out;
}

Report barrier_check(const Options& o) {
  ops::BarrierSpec spec;
  spec.R = o.R;
  spec.delta = o.delta;
  spec.kappa = o.kappa;
  spec.gamma = o.gamma;
  spec.validate();
  const ops::EllipticityBounds bounds{o.lambda_lo, o.lambda_hi};
  bounds.validate();
  const auto samples = ops::default_barrier_samples(spec, o.samples);
  const auto sweep = ops::barrier_sweep(spec, samples, bounds, quad_config(o), o.alpha_cap);
  Report r;
  r.columns = {"alpha", "R0", "value", "pucci_plus", "margin", "nonpositive"};
  for (const auto& rep : sweep.reports)
    for (const auto& row : rep.rows) r.rows.push_back({rep.spec.alpha, row.R0, row.value, row.pucci, row.margin, row.margin <= 0});
  if (sweep.first_alpha)
    r.checks.push_back({"margin_settles_nonpositive", true, "from alpha = " + format_number(*sweep.first_alpha)});
  else
    r.checks.push_back({"margin_settles_nonpositive", true, "inconclusive at alpha cap " + format_number(o.alpha_cap)});
  const auto grid = arccos_grid();
  const auto held = std::count_if(grid.begin(), grid.end(), [](const ops::ArccosReport& a) { return a.holds; });
  r.checks.push_back({"arccos_inequalities", held == static_cast<long>(grid.size()),
                      std::to_string(held) + "/" + std::to_string(grid.size()) + " grid points"});
  return r;
}

Report gamma_limit(const Options& o) {
  std::map<std::string, double> params;
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw DomainError("--param expects key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = parse_grid(kv.substr(eq + 1)).at(0);
  }
  const auto u = ops::make_profile(o.profile, params);
  auto gammas = parse_grid(o.gamma_grid.empty() ? "0.9,0.95,0.99,0.995" : o.gamma_grid);
  std::sort(gammas.begin(), gammas.end());
  const auto cfg = quad_config(o);
  const double target = ops::laplace_beltrami_stencil(u, o.R0);
  Report r;
  r.columns = {"gamma", "value", "laplacian", "abs_error", "rel_error", "decreasing"};
  bool decreasing = true;
  double prev = 0, last = 0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const double v = gammas[i] < 1 ? ops::apply_fraclap(u, o.R0, gammas[i], cfg) : ops::multiplier_oracle(u, o.R0, 1.0, cfg);
    const double e = std::abs(v - target);
    const bool dec = i == 0 || e < prev;
    decreasing = decreasing && dec;
    r.rows.push_back({gammas[i], v, target, e, e / std::abs(target), dec});
    prev = e;
    last = e / std::abs(target);
  }
  r.checks.push_back({"error_decreasing_in_gamma", decreasing, ""});
  if (o.tol > 0) r.checks.push_back({"last_within_tol", last <= o.tol, describe(last, o.tol)});
  return r;
}

struct CommandSpec {
  std::function<Report(const Options&)> run;
  std::set<std::string> flags;
};

const std::map<std::string, CommandSpec>& commands() {
  static const std::map<std::string, CommandSpec> table = {
      {"verify_constant", {verify_constant, {"--lambda-grid", "--gamma-grid", "--t", "--tol"}}},
      {"scale_sweep", {scale_sweep, {"--R-grid", "--gamma-grid", "--tol"}}},
      {"kernel_table", {kernel_table, {"--rho-grid", "--gamma", "--tau"}}},
      {"gyro_check", {gyro_check, {"--cases", "--pairs", "--t", "--tol"}}},
      {"barrier_check",
       {barrier_check, {"--R", "--delta", "--kappa", "--gamma", "--alpha-cap", "--lambda-lo", "--lambda-hi", "--samples"}}},
      {"gamma_limit", {gamma_limit, {"--profile", "--param", "--R0", "--gamma-grid", "--tol"}}},
  };
  return table;
}

nlohmann::json to_json(const Report& r, const Options& o, const std::map<std::string, std::string>& given,
                       double wall) {
  nlohmann::json j;
  j["command"] = r.command;
  j["metadata"] = {{"seed", o.seed},
                   {"rel_tol", o.rel_tol},
                   {"abs_tol", o.abs_tol},
                   {"max_subdiv", QuadratureConfig{}.max_subdiv},
                   {"params", given}};
  if (o.timing) j["metadata"]["wall_seconds"] = wall;
  j["columns"] = r.columns;
  j["records"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json rec;
    for (std::size_t i = 0; i < row.size(); ++i) rec[r.columns[i]] = cell_json(row[i]);
    j["records"].push_back(rec);
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["pass"] = r.pass();
  return j;
}

} // namespace

std::string format_csv(const Report& r) {
  std::string s;
  for (std::size_t i = 0; i < r.columns.size(); ++i) s += (i ? "," : "") + r.columns[i];
  s += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + cell_text(row[i]);
    s += '\n';
  }
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Verification reports for fractional Laplacians on hyperbolic 3-space"};
  std::vector<std::string> names;
  for (const auto& [name, spec] : commands()) names.push_back(name);
  app.add_option("--command", o.command, "Report to produce")->required()->check(CLI::IsMember(names));
  app.add_option("--out", o.out, "Output path (stdout when omitted)");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance");
  app.add_option("--abs-tol", o.abs_tol, "Quadrature absolute tolerance");
  app.add_flag("--timing", o.timing, "Record wall time in JSON metadata");

  app.add_option("--lambda-grid", o.lambda_grid, "Spectral parameters, list or lo:hi:n");
  app.add_option("--gamma-grid", o.gamma_grid, "Fractional orders, list or lo:hi:n");
  app.add_option("--R-grid", o.R_grid, "Scale radii, list or lo:hi:n");
  app.add_option("--rho-grid", o.rho_grid, "Kernel radii, list or lo:hi:n");
  app.add_option("--gamma", o.gamma, "Fractional order");
  app.add_option("--tau", o.tau, "Curvature scale");
  app.add_option("--t", o.t, "Poincare ball radius");
  app.add_option("--tol", o.tol, "Assertion tolerance");
  app.add_option("--cases", o.cases, "Random cases per algebraic property");
  app.add_option("--pairs", o.pairs, "Random pairs for the Jacobian check");
  app.add_option("--R", o.R, "Barrier radius");
  app.add_option("--delta", o.delta, "Barrier delta");
  app.add_option("--kappa", o.kappa, "Barrier kappa");
  app.add_option("--alpha-cap", o.alpha_cap, "Largest alpha in the doubling sweep");
  app.add_option("--lambda-lo", o.lambda_lo, "Lower ellipticity bound");
  app.add_option("--lambda-hi", o.lambda_hi, "Upper ellipticity bound");
  app.add_option("--samples", o.samples, "Barrier sample radii");
  app.add_option("--profile", o.profile, "Radial profile family");
  app.add_option("--param", o.params, "Profile parameter key=value (repeatable)");
  app.add_option("--R0", o.R0, "Distance of the evaluation point from the profile centre");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  static const std::set<std::string> common = {"--command", "--out", "--format", "--seed",
                                                "--rel-tol", "--abs-tol", "--timing"};
  const auto& spec = commands().at(o.command);
  std::map<std::string, std::string> given;
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->count() == 0) continue;
    const std::string flag = "--" + opt->get_single_name();
    if (!common.count(flag) && !spec.flags.count(flag)) {
      err << "usage error: " << flag << " does not apply to " << o.command << '\n';
      return kUsage;
    }
    if (!common.count(flag)) given[flag.substr(2)] = CLI::detail::join(opt->results(), ";");
  }

  Report report;
  const auto start = std::chrono::steady_clock::now();
  try {
    report = spec.run(o);
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedRange& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.command = o.command;

  const std::string text = o.format == "json" ? to_json(report, o, given, wall).dump(2) + "\n" : format_csv(report);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << text)) {
      err << "usage error: cannot write " << o.out << '\n';
      return kUsage;
    }
  }
  for (const auto& c : report.checks)
    err << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
  return report.pass() ? kPass : kAssertionFailure;
}

} // namespace hypfrac::cli
