// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alphastat/classify.hpp"
#include "alphastat/cli.hpp"
#include "alphastat/energy.hpp"
#include "alphastat/io.hpp"
#include "alphastat/minimize.hpp"
#include "alphastat/stationary.hpp"

using namespace alphastat;

namespace {

constexpr double kPi = std::numbers::pi;
const Space kH = Space::hyperbolic();
const Space kS = Space::spherical();

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Clockwise pole-centred circle sampled from its closed form: u = r, v = -t / w(r).
CurveSamples pole_circle(Space s, double r, std::size_t n) {
  CurveSamples c;
  c.space = s;
  c.arclength = true;
  const double len = 2 * kPi * s.warp(r);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = len * static_cast<double>(i) / static_cast<double>(n - 1);
    c.t.push_back(t);
    c.u.push_back(r);
    c.v.push_back(-t / s.warp(r));
  }
  return c;
}

double sigma_for(Space s, double alpha, double c, double u0) { return std::asin(c / profile(s, alpha, u0)); }

std::vector<double> scan_roots(Space s, double alpha, double c, double lo, double hi, int n) {
  auto g = [&](double u) { return log_profile(s, alpha, u) - std::log(c); };
  std::vector<double> roots;
  double prev_u = lo, prev = g(lo);
  for (int i = 1; i <= n; ++i) {
    const double u = lo + (hi - lo) * i / n;
    const double val = g(u);
    if ((prev > 0) != (val > 0)) {
      double a = prev_u, b = u;
      for (int k = 0; k < 200; ++k) {
        const double m = 0.5 * (a + b);
        if ((g(m) > 0) == (prev > 0)) a = m; else b = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_u = u;
    prev = val;
  }
  return roots;
}

// 1. Circle stationarity.
Check circles() {
  Check k;
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    CurveSamples c = pole_circle(kH, r, 201);
    annotate(c, -r / std::tanh(r));
    worst = std::max(worst, max_abs(c.el_residual));
  }
  for (double r : {kPi / 6, kPi / 3, 2 * kPi / 3}) {
    CurveSamples c = pole_circle(kS, r, 201);
    annotate(c, -r / std::tan(r));
    worst = std::max(worst, max_abs(c.el_residual));
  }
  k.require(worst < 1e-10, "residual " + fmt(worst));
  k.detail = k.ok ? "max residual " + fmt(worst) : k.detail;
  return k;
}

Trajectory criterion2_trajectory(Space s) {
  if (s.is_hyperbolic()) return integrate_stationary({kH, -1.0, 0.5, 1, 1}, 1.0, 0.0, sigma_for(kH, -1, 0.5, 1.0), 1e-3, 10.0);
  // c = 1 lies inside the S2 band of alpha = 2 (max of u^2 sin u is about 2.3).
  return integrate_stationary({kS, 2.0, 1.0, 1, 1}, 1.5, 0.0, sigma_for(kS, 2, 1.0, 1.5), 1e-3, 10.0);
}

// 2. First-integral conservation.
Check first_integral_drift() {
  Check k;
  double worst = 0.0;
  for (Space s : {kH, kS}) worst = std::max(worst, max_abs(criterion2_trajectory(s).curve.c_drift));
  k.require(worst < 1e-8, "drift " + fmt(worst));
  if (k.ok) k.detail = "max relative drift " + fmt(worst);
  return k;
}

// 3. Quadrature vs ODE.
Check two_methods() {
  struct Case {
    Space s;
    double alpha, c;
    std::size_t interval;
  };
  Check k;
  double worst = 0.0;
  for (const Case& cs : {Case{kH, -1.0, 0.5, 0}, Case{kH, 1.0, 1.0, 0}, Case{kH, 2.0, 1.0, 0},
                         Case{kH, -3.0, 0.5, 0}, Case{kS, 2.0, 1.0, 0}, Case{kS, -1.0, 0.5, 0}}) {
    const AdmissibleDomain d = admissible_domain(cs.s, cs.alpha, cs.c);
    const Interval iv = d.intervals.at(cs.interval);
    const double lo = std::max(iv.lo, 0.05);
    const double hi = std::isinf(iv.hi) ? lo + 3.0 : iv.hi;
    const StationaryParams p{cs.s, cs.alpha, cs.c, 1, 1};
    const CurveSamples q = quadrature_parametrization(p, {lo, hi}, 201);
    const std::size_t first = 20, last = 180;
    const Trajectory tr = integrate_stationary(p, q.u[first], q.v[first], sigma_for(cs.s, cs.alpha, cs.c, q.u[first]),
                                               1e-3, q.t[last] - q.t[first]);
    const auto& tv = tr.curve.v;
    for (std::size_t i = first + 10; i <= last; i += 10) {
      const auto it = std::lower_bound(tv.begin(), tv.end(), q.v[i]);
      if (it == tv.end() || it == tv.begin()) continue;
      const auto j = static_cast<std::size_t>(it - tv.begin());
      const double f = (q.v[i] - tv[j - 1]) / (tv[j] - tv[j - 1]);
      const double u = tr.curve.u[j - 1] + f * (tr.curve.u[j] - tr.curve.u[j - 1]);
      worst = std::max(worst, std::abs(u - q.u[i]));
    }
  }
  k.require(worst < 1e-6, "u mismatch " + fmt(worst));
  if (k.ok) k.detail = "6 combos, max |du| " + fmt(worst);
  return k;
}

// 4. Radial ODE cross-check.
Check radial_ode() {
  Check k;
  double worst = 0.0;
  for (Space s : {kH, kS}) {
    const Trajectory tr = criterion2_trajectory(s);
    const double alpha = s.is_hyperbolic() ? -1.0 : 2.0;
    const double c = s.is_hyperbolic() ? 0.5 : 1.0;
    const auto& u = tr.curve.u;
    const auto& t = tr.curve.t;
    // Fourth-order second difference: the three-point one is truncation
    // limited near the S2 turning point close to the antipode.
    for (std::size_t i = 2; i + 2 < u.size(); i += 13) {
      const double h = t[i + 1] - t[i];
      if (std::abs(t[i + 2] - t[i - 2] - 4 * h) > 1e-12) continue;
      const double fd = (-u[i + 2] + 16 * u[i + 1] - 30 * u[i] + 16 * u[i - 1] - u[i - 2]) / (12 * h * h);
      worst = std::max(worst, std::abs(fd - radial_acceleration(s, alpha, c, u[i])));
    }
  }
  k.require(worst < 1e-5, "mismatch " + fmt(worst));
  if (k.ok) k.detail = "max |u'' - a(u)| " + fmt(worst);
  return k;
}

// 5. Admissible domains.
Check admissible() {
  struct Case {
    Space s;
    double alpha, c;
  };
  const std::vector<Case> cases{
      // H2, alpha >= 0: f increases from 0.
      {kH, 0.5, 0.3}, {kH, 1.0, 2.0}, {kH, 2.0, 0.1},
      // H2, -1 <= alpha < 0: f increases from f(0+) in [0, 1].
      {kH, -0.5, 0.5}, {kH, -1.0, 0.5}, {kH, -1.0, 3.0},
      // H2, alpha < -1: f has one interior minimum.
      {kH, -3.0, 0.5}, {kH, -3.0, 0.01}, {kH, -2.0, 0.8}, {kH, -1.5, 2.0},
      // S2, alpha > 0: a band or nothing.
      {kS, 2.0, 1.0}, {kS, 1.0, 0.5}, {kS, 0.5, 5.0}, {kS, 3.0, 0.2},
      // S2, -1 <= alpha < 0.
      {kS, -0.5, 0.5}, {kS, -1.0, 0.5}, {kS, -1.0, 2.0},
      // S2, alpha < -1: f decreases from infinity.
      {kS, -2.0, 0.5}, {kS, -3.0, 1.0}, {kS, -1.5, 0.05}};
  Check k;
  double worst = 0.0;
  for (const Case& cs : cases) {
    const AdmissibleDomain d = admissible_domain(cs.s, cs.alpha, cs.c);
    const double hi = cs.s.is_spherical() ? kPi - 1e-9 : 30.0;
    const std::vector<double> roots = scan_roots(cs.s, cs.alpha, cs.c, 1e-9, hi, 100000);
    std::vector<double> ends;
    for (const Interval& iv : d.intervals) {
      for (double e : {iv.lo, iv.hi}) {
        if (e > 1e-9 && e < hi) ends.push_back(e);
      }
    }
    if (ends.size() != roots.size()) {
      k.require(false, std::string(cs.s.name()) + " alpha=" + fmt(cs.alpha) + " c=" + fmt(cs.c) + ": endpoint count");
      continue;
    }
    for (std::size_t i = 0; i < ends.size(); ++i) worst = std::max(worst, std::abs(ends[i] - roots[i]));
  }
  k.require(worst < 1e-8, "endpoint error " + fmt(worst));
  // alpha < -1 with c above the minimum of f: two intervals.
  const double umin = numerics::bisect([](double u) { return -3.0 / u + 1 / std::tanh(u); }, 0.1, 3.0);
  const double cmin = profile(kH, -3.0, umin);
  k.require(admissible_domain(kH, -3.0, 1.5 * cmin).intervals.size() == 2, "expected two intervals");
  if (k.ok) k.detail = "20 pairs, max endpoint error " + fmt(worst);
  return k;
}

// 6. Unboundedness in H2.
Check unbounded() {
  Check k;
  double longest = 0.0;
  for (double alpha : {-1.0, 0.5, 2.0}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      std::mt19937_64 rng(seed);
      const double u0 = std::uniform_real_distribution<double>(0.3, 2.0)(rng);
      const double sigma = std::uniform_real_distribution<double>(0.1, kPi - 0.1)(rng);
      const double c = profile(kH, alpha, u0) * std::sin(sigma);
      // Trace both ways from the seed point; an inward start may end at the
      // pole guard, the other end must still escape.
      double reach = INFINITY;
      for (int dir : {1, -1}) {
        const Trajectory tr = integrate_stationary({kH, alpha, c, dir, dir}, u0, 0.0, sigma, 1e-2, 400.0);
        const auto it = std::find_if(tr.curve.u.begin(), tr.curve.u.end(), [](double u) { return u > 10.0; });
        if (it != tr.curve.u.end()) reach = std::min(reach, tr.curve.t[static_cast<std::size_t>(it - tr.curve.u.begin())]);
      }
      if (std::isinf(reach)) {
        k.require(false, "alpha=" + fmt(alpha) + " seed " + std::to_string(seed) + " stayed below u=10");
        continue;
      }
      longest = std::max(longest, reach);
    }
  }
  for (double alpha = -1.0; alpha <= 10.0; alpha += 0.01) {
    if (invert_circle_alpha(kH, alpha)) k.require(false, "circle found for alpha=" + fmt(alpha));
  }
  if (k.ok) k.detail = "18 traces, u>10 by arc length " + fmt(longest);
  return k;
}

double ray_deviation(Space s, PolarPoint p) {
  // Intrinsic distance from p to the geodesic through N along v = 0.
  const double sv = std::abs(std::sin(p.v));
  return s.is_hyperbolic() ? std::asinh(std::sinh(p.u) * sv) : std::asin(std::min(1.0, std::sin(p.u) * sv));
}

// 7. Minimizer statements.
Check minimizers() {
  Check k;
  std::ostringstream d;
  {
    const auto [p1, p2] = scenario_endpoints(kH, Scenario::SameRay);
    const MinimizeProblem prob{kH, 2.0, p1, p2, 64};
    const MinimizeResult r = minimize_polyline(prob, random_init(kH, p1, p2, 64, 20240601));
    const double ref = 13.0 / 12.0;
    double dev = 0.0;
    for (std::size_t i = 0; i < r.curve.size(); ++i) dev = std::max(dev, ray_deviation(kH, r.curve.point(i)));
    k.require(std::abs(r.energy - ref) < 1e-3 * ref, "same-ray energy " + fmt(r.energy));
    k.require(dev < 1e-3, "same-ray deviation " + fmt(dev));
    d << "ray E=" << fmt(r.energy) << " dev=" << fmt(dev);
  }
  for (Space s : {kH, kS}) {
    const VerifyReport rep = verify_minimizer_theorems(s, 1.0, Scenario::ThroughPole);
    const double quad = energy(s, 1.0, geodesic_between(s, rep.p1, rep.p2, 4001)).value;
    for (double e : rep.optimized_energies) k.require(e >= quad - 1e-3, std::string(s.name()) + " optimized below geodesic");
    k.require(rep.pass, std::string(s.name()) + " through-pole verify failed");
    k.require(std::abs(*rep.dp_energy - rep.reference_energy) < 0.02 * rep.reference_energy,
              std::string(s.name()) + " DP off by more than 2%");
    d << "; " << s.name() << " geodesic=" << fmt(quad) << " best="
      << fmt(*std::min_element(rep.optimized_energies.begin(), rep.optimized_energies.end()))
      << " dp=" << fmt(*rep.dp_energy);
  }
  {
    const VerifyReport rep = verify_minimizer_theorems(kH, 2.0, Scenario::SameRay);
    k.require(std::abs(*rep.dp_energy - rep.reference_energy) < 0.02 * rep.reference_energy, "same-ray DP off");
  }
  if (k.ok) k.detail = d.str();
  return k;
}

// 8. South-pole closed form vs quadrature along the broken parametrization.
Check south_pole() {
  Check k;
  double worst = 0.0;
  for (auto [alpha, a, b] : {std::tuple{1.0, 3 * kPi / 4, kPi / 2}, std::tuple{2.0, kPi / 2, kPi / 2},
                             std::tuple{0.5, 2.0, 1.5}}) {
    // a -> south pole along one ray, then back up to b along the opposite ray.
    auto w = [alpha = alpha](double u) { return std::pow(u, alpha); };
    const double q = numerics::integrate(w, a, kPi).value + numerics::integrate(w, b, kPi).value;
    worst = std::max(worst, std::abs(q - energy_south_pole_geodesic(alpha, a, b)));
  }
  k.require(worst < 1e-8, "mismatch " + fmt(worst));
  if (k.ok) k.detail = "max mismatch " + fmt(worst);
  return k;
}

// 9. Closed-curve constraints.
Check closed_curves() {
  Check k;
  for (double r : {0.5, 1.0, 2.0}) {
    const ClosedCurveReport rep = check_closed_curve_constraints(kH, -r / std::tanh(r), pole_circle(kH, r, 2001));
    k.require(rep.pass(), "h2 circle r=" + fmt(r));
  }
  const ClosedCurveReport up = check_closed_curve_constraints(kS, -(kPi / 3) / std::tan(kPi / 3), pole_circle(kS, kPi / 3, 2001));
  k.require(up.pass() && up.hemisphere == "upper", "upper-hemisphere circle");
  const double a_low = -(2 * kPi / 3) / std::tan(2 * kPi / 3);
  const ClosedCurveReport low = check_closed_curve_constraints(kS, a_low, pole_circle(kS, 2 * kPi / 3, 2001));
  k.require(low.pass() && low.hemisphere == "lower" && a_low > 0, "lower-hemisphere circle");
  const ClosedCurveReport bad = check_closed_curve_constraints(kH, 2.0, pole_circle(kH, 1.0, 2001));
  k.require(!bad.pass() && bad.verdict == ClosedVerdict::NotStationary && bad.max_el_residual > 1e-3 &&
                !bad.findings.empty(),
            "mismatched alpha not rejected");
  if (k.ok) k.detail = "mismatch diagnosed: residual " + fmt(bad.max_el_residual);
  return k;
}

// 10. Gradient check.
Check gradient() {
  Check k;
  double worst = 0.0;
  std::mt19937_64 rng(77);
  for (Space s : {kH, kS, Space::euclidean()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const double alpha = std::uniform_real_distribution<double>(-2.0, 3.0)(rng);
      std::vector<PolarPoint> pts;
      for (int i = 0; i < 8; ++i) {
        pts.push_back({std::uniform_real_distribution<double>(0.3, 2.0)(rng),
                       std::uniform_real_distribution<double>(-kPi, kPi)(rng)});
      }
      const std::vector<double> xy = to_chart(s, pts);
      const std::vector<double> g = discrete_energy_gradient(s, alpha, xy);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < xy.size(); ++i) {
        std::vector<double> a = xy, b = xy;
        const double h = 1e-6;
        a[i] += h;
        b[i] -= h;
        const double fd = (discrete_energy(s, alpha, a) - discrete_energy(s, alpha, b)) / (2 * h);
        num += (fd - g[i]) * (fd - g[i]);
        den += g[i] * g[i];
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
  }
  k.require(worst < 1e-6, "relative error " + fmt(worst));
  if (k.ok) k.detail = "300 configs, max relative error " + fmt(worst);
  return k;
}

// 11. Figure reproduction.
Check figures() {
  struct Fig {
    const char* space;
    double alpha, c, u0;
  };
  Check k;
  std::filesystem::create_directories("figures");
  int n = 0;
  for (const Fig& f : {Fig{"h2", 1, 1, 1.5}, Fig{"h2", -1, 2, 3}, Fig{"h2", -3, 0.5, 1}, Fig{"s2", 2, 1, 1.5},
                       Fig{"s2", -1, 0.5, 1}, Fig{"s2", -2, 0.5, 1}}) {
    std::ostringstream stem;
    stem << "figures/" << f.space << "_alpha" << f.alpha;
    const std::string csv = stem.str() + ".csv";
    const std::string svg = stem.str() + ".svg";
    const std::vector<std::string> args{"alphastat", "trace", "--space", f.space, "--alpha", io::format_double(f.alpha),
                                        "--c", io::format_double(f.c), "--u0", io::format_double(f.u0),
                                        "--len", "12", "--step", "1e-3", "--out", csv, "--svg", svg};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    if (cli::run(static_cast<int>(argv.size()), argv.data(), out, err) != 0) {
      k.require(false, std::string("trace failed: ") + err.str());
      continue;
    }
    const Space s = Space::parse(f.space);
    const CurveSamples c = io::read_csv_file(csv, s);
    const AdmissibleDomain d = admissible_domain(s, f.alpha, f.c);
    const auto home = std::find_if(d.intervals.begin(), d.intervals.end(),
                                   [&](const Interval& iv) { return iv.lo <= f.u0 && f.u0 <= iv.hi; });
    k.require(home != d.intervals.end(), stem.str() + ": u0 outside the domain");
    if (home == d.intervals.end()) continue;
    for (double u : c.u) k.require(u >= home->lo - 1e-9 && u <= home->hi + 1e-9, stem.str() + ": left the band");
    const double gap = geodesic_distance(s, c.point(0), c.point(c.size() - 1));
    k.require(gap > 1e-2, stem.str() + ": closed (gap " + fmt(gap) + ")");
    k.require(std::filesystem::exists(svg), stem.str() + ": no SVG");
    ++n;
  }
  if (k.ok) k.detail = std::to_string(n) + " SVGs in figures/";
  return k;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"circle stationarity", circles},
      {"first-integral conservation", first_integral_drift},
      {"quadrature vs ODE", two_methods},
      {"radial ODE cross-check", radial_ode},
      {"admissible domains", admissible},
      {"unboundedness in H2", unbounded},
      {"minimizer statements", minimizers},
      {"south-pole formula", south_pole},
      {"closed-curve constraints", closed_curves},
      {"gradient check", gradient},
      {"figure reproduction", figures},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %zu %s: %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.detail.c_str());
    failures += c.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
