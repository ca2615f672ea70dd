#pragma once

// Command implementations behind the `alphastat` tool. Each command takes a
// RunConfig, writes its files, prints a JSON report and returns the exit code:
// 0 success, 1 tolerance or convergence failure, 2 usage error, 3 domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "alphastat/classify.hpp"
#include "alphastat/curves.hpp"
#include "alphastat/energy.hpp"
#include "alphastat/error.hpp"
#include "alphastat/geometry.hpp"
#include "alphastat/io.hpp"
#include "alphastat/minimize.hpp"
#include "alphastat/stationary.hpp"

namespace alphastat::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kTolerance = 1, kUsage = 2, kDomain = 3 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::MalformedInput:
    case ErrorCode::HypothesisViolated:
    case ErrorCode::EndpointsNotOnGrid:
    case ErrorCode::TooFewSamples:
    case ErrorCode::InconsistentInitialData:
      return kUsage;
    default:
      return kDomain;
  }
}

struct RunConfig {
  std::string command;
  std::string space = "h2";
  std::optional<double> alpha;
  std::uint64_t seed = 20240601;
  unsigned jobs = 1;

  // outputs
  std::string out_csv;
  std::string svg;
  std::string report;
  std::string trace_csv;

  // trace
  std::optional<std::string> c;
  std::optional<double> u0;
  double v0 = 0.0;
  std::optional<double> sigma0;
  double length = 20.0;
  double step = 1e-3;

  // validate / energy / plot
  std::vector<std::string> inputs;
  double tol = 1e-6;
  std::vector<double> ray;
  std::vector<double> south_pole;

  // classify
  std::vector<double> a;
  std::optional<double> tau;
  std::optional<double> radius;

  // minimize
  std::string scenario;
  std::vector<double> p1;
  std::vector<double> p2;
  std::size_t vertices = 64;
  std::size_t starts = 5;
  std::size_t max_iters = 500;
  double grad_tol = 1e-8;
  bool dp = false;
  std::vector<std::size_t> dp_grid{200, 400};

  Space parsed_space() const { return Space::parse(space); }

  double require_alpha() const {
    if (!alpha) throw Error(ErrorCode::InvalidArgument, "--alpha is required");
    return *alpha;
  }
};

namespace detail {

inline void emit(const RunConfig& cfg, const Json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (!cfg.report.empty()) io::write_text_file(cfg.report, text);
  out << text;
}

inline Json interval_json(const Interval& i) {
  return Json::array({i.lo, std::isfinite(i.hi) ? Json(i.hi) : Json("inf")});
}

inline CurveSamples read_input(const RunConfig& cfg, std::size_t index = 0) {
  if (cfg.inputs.size() <= index) throw Error(ErrorCode::InvalidArgument, "--in is required");
  return io::read_csv_file(cfg.inputs[index], cfg.parsed_space());
}

/// True when FD speed is 1 within `tol` at every sample.
inline bool unit_speed(const CurveSamples& c, double tol = 1e-6) {
  for (const CurveState& s : states_from_samples(c)) {
    if (std::abs(speed(c.space, s) - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_trace(const RunConfig& cfg, std::ostream& out) {
  const Space space = cfg.parsed_space();
  const double alpha = cfg.require_alpha();
  if (!cfg.u0) throw Error(ErrorCode::InvalidArgument, "--u0 is required");
  const double u0 = *cfg.u0;
  space.require_valid_u(u0);
  const double f0 = profile(space, alpha, u0);

  double c = 0.0;
  double sigma = 0.0;
  Json notes = Json::array();
  if (cfg.c && *cfg.c == "auto-circle") {
    c = f0;
    sigma = std::numbers::pi / 2.0;
  } else if (cfg.c) {
    try {
      std::size_t used = 0;
      c = std::stod(*cfg.c, &used);
      if (used != cfg.c->size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "--c must be a number or 'auto-circle'");
    }
    if (std::abs(c) > f0 * (1.0 + 1e-12)) {
      throw Error(ErrorCode::OutsideDomain, "|c| exceeds u0^alpha w(u0) = " + io::format_double(f0));
    }
    const double s = std::asin(std::clamp(c / f0, -1.0, 1.0));
    // c fixes sin(sigma0); --sigma0 only picks the sign of cos(sigma0).
    sigma = cfg.sigma0 && std::cos(*cfg.sigma0) < 0.0 ? std::numbers::pi - s : s;
    if (cfg.sigma0 && std::abs(f0 * std::sin(*cfg.sigma0) - c) > 1e-9 * std::max(1.0, std::abs(c))) {
      notes.push_back("sigma0 replaced by " + io::format_double(sigma) + " to match c");
    }
  } else if (cfg.sigma0) {
    sigma = *cfg.sigma0;
    c = f0 * std::sin(sigma);
  } else {
    throw Error(ErrorCode::InvalidArgument, "give --c or --sigma0");
  }

  StationaryParams p{space, alpha, std::abs(c), 1, c < 0.0 ? -1 : 1};
  const double sigma_plus = c < 0.0 ? -sigma : sigma;
  const Trajectory tr = integrate_stationary(p, u0, cfg.v0, sigma_plus, cfg.step, cfg.length);
  const CurveSamples& curve = tr.curve;

  if (!cfg.out_csv.empty()) io::write_text_file(cfg.out_csv, io::to_csv(curve));
  if (!cfg.svg.empty()) {
    std::ostringstream title;
    title << space.name() << " alpha=" << io::format_double(alpha) << " c=" << io::format_double(c);
    io::write_text_file(cfg.svg, io::svg_figure(space, {curve}, title.str()));
  }

  Json j;
  j["command"] = "trace";
  j["space"] = space.name();
  j["alpha"] = alpha;
  j["c"] = c;
  j["u0"] = u0;
  j["v0"] = cfg.v0;
  j["sigma0"] = sigma;
  j["step"] = cfg.step;
  j["requested_length"] = cfg.length;
  j["traced_length"] = curve.length();
  j["samples"] = curve.size();
  j["stop"] = to_string(tr.stop);
  j["max_halvings"] = tr.max_halvings_used;
  const auto [umin, umax] = std::minmax_element(curve.u.begin(), curve.u.end());
  j["u_range"] = Json::array({*umin, *umax});
  try {
    const AdmissibleDomain dom = admissible_domain(space, alpha, std::abs(c));
    Json ivs = Json::array();
    for (const Interval& i : dom.intervals) ivs.push_back(detail::interval_json(i));
    j["admissible_intervals"] = ivs;
  } catch (const Error& e) {
    notes.push_back(std::string("admissible domain unavailable: ") + e.what());
  }
  j["max_el_residual"] = max_abs(curve.el_residual);
  j["max_c_drift"] = max_abs(curve.c_drift);
  j["endpoint_gap"] = geodesic_distance(space, curve.point(0), curve.point(curve.size() - 1));
  j["notes"] = notes;
  detail::emit(cfg, j, out);
  return kOk;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const Space space = cfg.parsed_space();
  const double alpha = cfg.require_alpha();
  CurveSamples c = detail::read_input(cfg);
  c.validate();
  Json j;
  j["command"] = "validate";
  j["space"] = space.name();
  j["alpha"] = alpha;
  j["samples"] = c.size();
  bool resampled = false;
  if (!detail::unit_speed(c)) {
    c = resample_arclength(c, c.size());
    resampled = true;
  } else {
    c.arclength = true;
  }
  c.sigma.reset();
  annotate(c, alpha);
  const double residual = max_abs(c.el_residual);
  const double drift = max_abs(c.c_drift);
  j["resampled_to_arclength"] = resampled;
  j["max_el_residual"] = residual;
  j["first_integral_drift"] = drift;
  j["tolerance"] = cfg.tol;
  const double gap = geodesic_distance(space, c.point(0), c.point(c.size() - 1));
  const bool closed = gap <= 1e-6;
  j["endpoint_gap"] = gap;
  j["closed"] = closed;
  bool ok = residual <= cfg.tol && drift <= cfg.tol;
  if (closed) {
    const ClosedCurveReport rep = check_closed_curve_constraints(space, alpha, c, cfg.tol);
    Json cc;
    cc["verdict"] = to_string(rep.verdict);
    cc["max_el_residual"] = rep.max_el_residual;
    if (rep.mean_radius) cc["mean_radius"] = *rep.mean_radius;
    if (rep.expected_alpha) cc["expected_alpha"] = *rep.expected_alpha;
    if (!rep.hemisphere.empty()) cc["hemisphere"] = rep.hemisphere;
    cc["findings"] = rep.findings;
    j["closed_constraints"] = cc;
    ok = ok && rep.pass();
  } else {
    j["closed_constraints"] = nullptr;
  }
  j["pass"] = ok;
  detail::emit(cfg, j, out);
  return ok ? kOk : kTolerance;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Space space = cfg.parsed_space();
  Json j;
  j["command"] = "classify";
  j["space"] = space.name();
  if (cfg.radius) {
    j["radius"] = *cfg.radius;
    j["circle_alpha"] = circle_alpha(space, *cfg.radius);
  }
  if (!cfg.a.empty() || cfg.tau) {
    if (cfg.a.size() != 3 || !cfg.tau) throw Error(ErrorCode::InvalidArgument, "--a x,y,z and --tau go together");
    const ConstCurvCurve c = classify_constant_curvature(space, {cfg.a[0], cfg.a[1], cfg.a[2]}, *cfg.tau);
    j["type"] = to_string(c.curve_type);
    j["a"] = Json::array({c.a.x, c.a.y, c.a.z});
    j["tau"] = c.tau;
    j["delta"] = c.delta;
    j["lambda"] = c.lambda;
    j["kappa"] = c.kappa;
    j["centred_at_pole"] = c.centred_at_pole();
    if (const auto r = c.pole_radius()) j["pole_radius"] = *r;
    if (cfg.alpha) {
      j["alpha"] = *cfg.alpha;
      j["stationary"] = is_stationary_constant_curvature(c, *cfg.alpha);
    }
  } else if (cfg.alpha) {
    j["alpha"] = *cfg.alpha;
    const auto r = invert_circle_alpha(space, *cfg.alpha);
    j["circle_radius"] = r ? Json(*r) : Json(nullptr);
  } else if (!cfg.radius) {
    throw Error(ErrorCode::InvalidArgument, "give --a/--tau, --radius or --alpha");
  }
  detail::emit(cfg, j, out);
  return kOk;
}

inline PolarPoint parse_point(const std::vector<double>& xs, const char* flag) {
  if (xs.size() != 2) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " expects u,v");
  return {xs[0], xs[1]};
}

inline int cmd_minimize(const RunConfig& cfg, std::ostream& out) {
  const Space space = cfg.parsed_space();
  const double alpha = cfg.require_alpha();
  PolarPoint p1, p2;
  std::string kind;
  if (!cfg.scenario.empty()) {
    const Scenario s = parse_scenario(cfg.scenario);
    std::tie(p1, p2) = scenario_endpoints(space, s);
  } else {
    p1 = parse_point(cfg.p1, "--p1");
    p2 = parse_point(cfg.p2, "--p2");
  }
  space.require_valid_u(p1.u);
  space.require_valid_u(p2.u);

  const double dv = std::abs(std::remainder(p1.v - p2.v, 2.0 * std::numbers::pi));
  std::optional<double> reference;
  std::string reference_kind = "geodesic";
  bool exploratory = false;
  if (dv < 1e-12) {
    kind = "same-ray";
    reference = energy_ray_segment(alpha, std::min(p1.u, p2.u), std::max(p1.u, p2.u));
    reference_kind = "ray";
  } else if (std::abs(dv - std::numbers::pi) < 1e-12 && is_south_pole_case(space, p1, p2)) {
    kind = "south-pole";
    exploratory = true;
    if (alpha > 0.0) reference = energy_south_pole_geodesic(alpha, p1.u, p2.u);
    reference_kind = "south-pole geodesic";
  } else if (std::abs(dv - std::numbers::pi) < 1e-12) {
    kind = "through-pole";
    if (!(alpha > 0.0)) {
      throw Error(ErrorCode::HypothesisViolated,
                  "through-pole endpoints: the minimizer statement assumes alpha > 0; refusing to assert it");
    }
    reference = (std::pow(p1.u, alpha + 1.0) + std::pow(p2.u, alpha + 1.0)) / (alpha + 1.0);
    reference_kind = "broken ray through N";
  } else {
    kind = "general";
    if (!space.is_spherical() || geodesic_distance(space, p1, p2) < std::numbers::pi - 1e-9) {
      reference = energy(space, alpha, geodesic_between(space, p1, p2, 4001)).value;
    }
  }

  MinimizeProblem prob{space, alpha, p1, p2, cfg.vertices, cfg.max_iters, cfg.grad_tol};
  prob.validate();
  std::vector<MinimizeResult> results(cfg.starts);
  const unsigned jobs = std::max(1u, cfg.jobs);
  auto run = [&](std::size_t i) {
    return minimize_polyline(prob, random_init(space, p1, p2, cfg.vertices, cfg.seed + i));
  };
  for (std::size_t first = 0; first < cfg.starts; first += jobs) {
    std::vector<std::future<MinimizeResult>> pending;
    const std::size_t last = std::min(cfg.starts, first + jobs);
    for (std::size_t i = first; i < last; ++i) {
      pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run, i));
    }
    for (std::size_t i = first; i < last; ++i) results[i] = pending[i - first].get();
  }
  if (results.empty()) throw Error(ErrorCode::InvalidArgument, "--starts must be positive");
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].energy < results[best].energy) best = i;
  }
  const MinimizeResult& r = results[best];

  Json j;
  j["command"] = "minimize";
  j["space"] = space.name();
  j["alpha"] = alpha;
  j["p1"] = Json::array({p1.u, p1.v});
  j["p2"] = Json::array({p2.u, p2.v});
  j["case"] = kind;
  if (exploratory) j["note"] = "no theorem; exploratory";
  j["seed"] = cfg.seed;
  j["vertices"] = cfg.vertices;
  Json runs = Json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    runs.push_back({{"seed", cfg.seed + i},
                    {"energy", results[i].energy},
                    {"iterations", results[i].iterations},
                    {"converged", results[i].converged},
                    {"guard_limited", results[i].guard_limited},
                    {"gradient_norm", results[i].gradient_norm}});
  }
  j["runs"] = runs;
  j["optimized_energy"] = r.energy;
  j["reference_kind"] = reference_kind;
  j["reference_energy"] = reference ? Json(*reference) : Json(nullptr);
  if (reference) j["optimized_minus_reference"] = r.energy - *reference;
  if (cfg.dp) {
    if (cfg.dp_grid.size() != 2) throw Error(ErrorCode::InvalidArgument, "--dp-grid expects nu,nv");
    const double top = space.is_spherical() ? std::numbers::pi - 0.05 : std::max(p1.u, p2.u) + 0.25;
    const double hi = std::min(std::max(p1.u, p2.u) + 0.25, top);
    const double lo = kind == "through-pole" ? 0.0 : std::max(0.0, std::min(p1.u, p2.u) - 0.25);
    const DpGrid grid = make_band(space, p1, p2, cfg.dp_grid[0], cfg.dp_grid[1], lo, hi);
    j["dp_energy"] = dp_grid_min(space, alpha, p1, p2, grid);
    j["dp_grid"] = Json::array({grid.nu, grid.nv});
  }
  const bool ok = r.converged || r.guard_limited;
  j["converged"] = ok;

  if (!cfg.out_csv.empty()) io::write_text_file(cfg.out_csv, io::to_csv(r.curve));
  if (!cfg.trace_csv.empty()) {
    std::ostringstream os;
    os << "iteration,energy\n";
    for (std::size_t i = 0; i < r.energy_trace.size(); ++i) os << i << ',' << io::format_double(r.energy_trace[i]) << '\n';
    io::write_text_file(cfg.trace_csv, os.str());
  }
  if (!cfg.svg.empty()) {
    std::vector<CurveSamples> curves{r.curve};
    try {
      curves.push_back(geodesic_between(space, p1, p2, 400));
    } catch (const Error&) {
    }
    io::write_text_file(cfg.svg, io::svg_figure(space, curves, "minimize"));
  }
  detail::emit(cfg, j, out);
  return ok ? kOk : kTolerance;
}

inline int cmd_energy(const RunConfig& cfg, std::ostream& out) {
  const double alpha = cfg.require_alpha();
  Json j;
  j["command"] = "energy";
  j["alpha"] = alpha;
  if (!cfg.ray.empty()) {
    if (cfg.ray.size() != 2) throw Error(ErrorCode::InvalidArgument, "--ray expects a1,a2");
    j["ray_energy"] = energy_ray_segment(alpha, cfg.ray[0], cfg.ray[1]);
  }
  if (!cfg.south_pole.empty()) {
    if (cfg.south_pole.size() != 2) throw Error(ErrorCode::InvalidArgument, "--south-pole expects a,b");
    j["south_pole_energy"] = energy_south_pole_geodesic(alpha, cfg.south_pole[0], cfg.south_pole[1]);
  }
  if (!cfg.inputs.empty()) {
    const Space space = cfg.parsed_space();
    CurveSamples c = detail::read_input(cfg);
    c.validate();
    c.arclength = detail::unit_speed(c);
    const EnergyReport e = energy(space, alpha, c);
    j["space"] = space.name();
    j["value"] = e.value;
    j["length"] = e.length;
    j["quadrature_error_estimate"] = e.quadrature_error_estimate;
  }
  if (j.size() == 2) throw Error(ErrorCode::InvalidArgument, "give --in, --ray or --south-pole");
  detail::emit(cfg, j, out);
  return kOk;
}

inline int cmd_plot(const RunConfig& cfg, std::ostream& out) {
  const Space space = cfg.parsed_space();
  if (cfg.svg.empty()) throw Error(ErrorCode::InvalidArgument, "--svg is required");
  std::vector<CurveSamples> curves;
  for (std::size_t i = 0; i < cfg.inputs.size(); ++i) curves.push_back(detail::read_input(cfg, i));
  if (curves.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required");
  io::write_text_file(cfg.svg, io::svg_figure(space, curves));
  Json j;
  j["command"] = "plot";
  j["space"] = space.name();
  j["curves"] = curves.size();
  j["svg"] = cfg.svg;
  detail::emit(cfg, j, out);
  return kOk;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "trace") return cmd_trace(cfg, out);
  if (cfg.command == "validate") return cmd_validate(cfg, out);
  if (cfg.command == "classify") return cmd_classify(cfg, out);
  if (cfg.command == "minimize") return cmd_minimize(cfg, out);
  if (cfg.command == "energy") return cmd_energy(cfg, out);
  if (cfg.command == "plot") return cmd_plot(cfg, out);
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
}

/// Parses argv, runs the command and maps failures to exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"alpha-stationary curves in H2, S2 and E2"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool need_alpha) {
    sub->add_option("--space", cfg.space, "h2, s2 or e2")->check(CLI::IsMember({"h2", "s2", "e2"}));
    auto* a = sub->add_option("--alpha", cfg.alpha, "density exponent");
    if (need_alpha) a->required();
    sub->add_option("--report", cfg.report, "write the JSON report here as well");
  };

  auto* trace = app.add_subcommand("trace", "integrate a stationary curve");
  common(trace, true);
  trace->add_option("--c", cfg.c, "first integral, or auto-circle");
  trace->add_option("--u0", cfg.u0, "initial distance to N")->required();
  trace->add_option("--v0", cfg.v0, "initial polar angle");
  trace->add_option("--sigma0", cfg.sigma0, "initial turning angle");
  trace->add_option("--len", cfg.length, "arc length to trace");
  trace->add_option("--step", cfg.step, "RK4 step");
  trace->add_option("--out", cfg.out_csv, "curve CSV");
  trace->add_option("--svg", cfg.svg, "SVG figure");

  auto* validate = app.add_subcommand("validate", "check a sampled curve against the EL equation");
  common(validate, true);
  validate->add_option("--in", cfg.inputs, "curve CSV")->required();
  validate->add_option("--tol", cfg.tol, "residual and drift tolerance");

  auto* classify = app.add_subcommand("classify", "classify C_{a,tau} or invert the circle map");
  common(classify, false);
  classify->add_option("--a", cfg.a, "a as x,y,z")->delimiter(',');
  classify->add_option("--tau", cfg.tau, "level");
  classify->add_option("--radius", cfg.radius, "report alpha of the pole-centred circle of this radius");

  auto* minimize = app.add_subcommand("minimize", "two-point energy minimization");
  common(minimize, true);
  minimize->add_option("--scenario", cfg.scenario, "same-ray or through-pole")
      ->check(CLI::IsMember({"same-ray", "through-pole"}));
  minimize->add_option("--p1", cfg.p1, "u,v")->delimiter(',');
  minimize->add_option("--p2", cfg.p2, "u,v")->delimiter(',');
  minimize->add_option("--vertices", cfg.vertices, "polyline vertices");
  minimize->add_option("--starts", cfg.starts, "random initial curves");
  minimize->add_option("--seed", cfg.seed, "base seed");
  minimize->add_option("--jobs", cfg.jobs, "parallel starts");
  minimize->add_option("--max-iters", cfg.max_iters, "Newton iterations per start");
  minimize->add_option("--grad-tol", cfg.grad_tol, "gradient norm for convergence");
  minimize->add_flag("--dp", cfg.dp, "also run the grid oracle");
  minimize->add_option("--dp-grid", cfg.dp_grid, "nu,nv")->delimiter(',');
  minimize->add_option("--out", cfg.out_csv, "best curve CSV");
  minimize->add_option("--trace-out", cfg.trace_csv, "energy per accepted step");
  minimize->add_option("--svg", cfg.svg, "SVG figure");

  auto* energy_cmd = app.add_subcommand("energy", "energy of a curve or of the closed-form references");
  common(energy_cmd, true);
  energy_cmd->add_option("--in", cfg.inputs, "curve CSV");
  energy_cmd->add_option("--ray", cfg.ray, "a1,a2")->delimiter(',');
  energy_cmd->add_option("--south-pole", cfg.south_pole, "a,b")->delimiter(',');

  auto* plot = app.add_subcommand("plot", "SVG of curve CSVs");
  common(plot, false);
  plot->add_option("--in", cfg.inputs, "curve CSV (repeatable)")->required();
  plot->add_option("--svg", cfg.svg, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(cfg, out);
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
}

}  // namespace alphastat::cli
