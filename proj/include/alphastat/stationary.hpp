#pragma once

// alpha-stationary curves of E_alpha = int d^alpha ds.
//
// Along a unit-speed curve with turning angle sigma (u' = cos sigma,
// w(u) v' = sin sigma) the Euler-Lagrange equation is
//   sigma' = -sin(sigma) (w'(u)/w(u) + alpha/u),
// whose first integral is u^alpha w(u) sin(sigma) = c.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "alphastat/curves.hpp"
#include "alphastat/error.hpp"
#include "alphastat/geometry.hpp"
#include "alphastat/numerics.hpp"

namespace alphastat {

inline constexpr double kPoleGuard = 1e-6;

/// kappa - alpha <n, xi>_eps / u; vanishes exactly on alpha-stationary jets.
inline double el_residual(Space space, double alpha, const CurveState& s) {
  return weighted_curvature(space, alpha, s);
}

inline double first_integral(Space space, double alpha, double u, double sigma) {
  space.require_valid_u(u);
  return std::pow(u, alpha) * space.warp(u) * std::sin(sigma);
}

/// f(u) = u^alpha w(u); the radicand of the quadratures is f^2 - c^2.
inline double profile(Space space, double alpha, double u) { return std::pow(u, alpha) * space.warp(u); }

/// log f(u), finite where f itself would overflow.
inline double log_profile(Space space, double alpha, double u) {
  double log_w = 0.0;
  if (space.is_hyperbolic() && u > 20.0) {
    log_w = u - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * u));
  } else {
    log_w = std::log(space.warp(u));
  }
  return alpha * std::log(u) + log_w;
}

struct StationaryParams {
  Space space = Space::hyperbolic();
  double alpha = 1.0;
  double c = 1.0;
  int branch_t = 1;  // +1: u increases with t at the start, -1: decreases
  int branch_v = 1;  // +1: v increases along the curve, -1: mirror image

  void validate(bool allow_zero_c = false) const {
    if (alpha == 0.0 || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be finite and nonzero");
    if (!std::isfinite(c) || c < 0.0 || (!allow_zero_c && c == 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "c must be positive");
    }
    if ((branch_t != 1 && branch_t != -1) || (branch_v != 1 && branch_v != -1)) {
      throw Error(ErrorCode::InvalidArgument, "branch signs must be +1 or -1");
    }
  }
};

// ---------------------------------------------------------------------------
// ODE integration

enum class TraceStop { Completed, PoleGuard, AntipodeGuard, Escaped };

inline std::string_view to_string(TraceStop s) {
  switch (s) {
    case TraceStop::Completed: return "completed";
    case TraceStop::PoleGuard: return "pole-guard";
    case TraceStop::AntipodeGuard: return "antipode-guard";
    case TraceStop::Escaped: return "escaped";
  }
  return "?";
}

struct Trajectory {
  CurveSamples curve;
  TraceStop stop = TraceStop::Completed;
  int max_halvings_used = 0;
};

namespace detail {

struct OdeState {
  double u, v, sigma;
};

inline OdeState stationary_rhs(Space space, double alpha, const OdeState& y) {
  const double s = std::sin(y.sigma);
  return {std::cos(y.sigma), s / space.warp(y.u),
          -s * (space.warp_log_derivative(y.u) + alpha / y.u)};
}

inline OdeState rk4_step(Space space, double alpha, const OdeState& y, double h) {
  auto axpy = [](const OdeState& a, double k, const OdeState& b) {
    return OdeState{a.u + k * b.u, a.v + k * b.v, a.sigma + k * b.sigma};
  };
  const OdeState k1 = stationary_rhs(space, alpha, y);
  const OdeState k2 = stationary_rhs(space, alpha, axpy(y, 0.5 * h, k1));
  const OdeState k3 = stationary_rhs(space, alpha, axpy(y, 0.5 * h, k2));
  const OdeState k4 = stationary_rhs(space, alpha, axpy(y, h, k3));
  return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          y.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
          y.sigma + h / 6.0 * (k1.sigma + 2.0 * k2.sigma + 2.0 * k3.sigma + k4.sigma)};
}

/// Exact jet of the flow at y, used for the per-sample residual.
inline CurveState jet_of(Space space, double alpha, const OdeState& y) {
  const OdeState d = stationary_rhs(space, alpha, y);
  const double w = space.warp(y.u);
  const double wp = space.warp_prime(y.u);
  const double s = std::sin(y.sigma), co = std::cos(y.sigma);
  const double ddu = -s * d.sigma;
  const double ddv = (co * d.sigma * w - s * wp * co) / (w * w);
  return {y.u, y.v, co, s / w, ddu, ddv};
}

inline bool inside_guards(Space space, double u, TraceStop& why) {
  if (!std::isfinite(u)) {
    why = TraceStop::Escaped;
    return false;
  }
  if (u < kPoleGuard) {
    why = TraceStop::PoleGuard;
    return false;
  }
  if (space.is_spherical() && u > std::numbers::pi - kPoleGuard) {
    why = TraceStop::AntipodeGuard;
    return false;
  }
  if (!space.is_spherical() && u > 300.0) {
    why = TraceStop::Escaped;
    return false;
  }
  return true;
}

}  // namespace detail

/// Fixed-step RK4 integration of the (u, v, sigma) system in arc length.
///
/// sigma0 is the turning angle for branch_t = branch_v = +1 and must satisfy
/// first_integral(u0, sigma0) = c. branch_t = -1 starts with the radial
/// direction reversed (sigma -> pi - sigma); branch_v = -1 mirrors v.
/// Each nominal step is split in 2^k RK4 substeps until the first integral
/// moves by at most 1e-6 (relative) per substep.
inline Trajectory integrate_stationary(const StationaryParams& p, double u0, double v0, double sigma0,
                                       double step, double total_length) {
  p.validate(/*allow_zero_c=*/true);
  const Space space = p.space;
  space.require_valid_u(u0);
  if (!(step > 0.0) || !(total_length > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "step and total length must be positive");
  }
  const double given = first_integral(space, p.alpha, u0, sigma0);
  if (std::abs(given - p.c) > 1e-9 * std::max(1.0, p.c)) {
    throw Error(ErrorCode::InconsistentInitialData,
                "u0^alpha w(u0) sin(sigma0) = " + std::to_string(given) + " but c = " + std::to_string(p.c));
  }

  double sigma_start = p.branch_t > 0 ? sigma0 : std::numbers::pi - sigma0;
  sigma_start *= p.branch_v;
  const double target = p.branch_v * p.c;
  const double scale = p.c > 0.0 ? p.c : 1.0;
  constexpr double kDriftLimit = 1e-6;
  constexpr int kMaxHalvings = 12;

  Trajectory out;
  CurveSamples& c = out.curve;
  c.space = space;
  c.arclength = true;
  c.sigma.emplace();

  detail::OdeState y{u0, v0, sigma_start};
  auto record = [&](double t, const detail::OdeState& s) {
    c.t.push_back(t);
    c.u.push_back(s.u);
    c.v.push_back(s.v);
    c.sigma->push_back(s.sigma);
    c.el_residual.push_back(el_residual(space, p.alpha, detail::jet_of(space, p.alpha, s)));
    c.c_drift.push_back((first_integral(space, p.alpha, s.u, s.sigma) - target) / scale);
  };
  record(0.0, y);

  const auto steps = static_cast<std::size_t>(std::ceil(total_length / step - 1e-9));
  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = static_cast<double>(k) * step;
    const double h = k + 1 == steps ? total_length - t0 : step;
    bool accepted = false;
    bool stopped = false;
    detail::OdeState next = y;
    for (int halvings = 0; halvings <= kMaxHalvings && !accepted; ++halvings) {
      const int m = 1 << halvings;
      const double hs = h / m;
      next = y;
      accepted = true;
      for (int j = 0; j < m; ++j) {
        const detail::OdeState trial = detail::rk4_step(space, p.alpha, next, hs);
        TraceStop why{};
        if (!detail::inside_guards(space, trial.u, why)) {
          out.stop = why;
          stopped = true;
          break;
        }
        const double before = first_integral(space, p.alpha, next.u, next.sigma);
        const double after = first_integral(space, p.alpha, trial.u, trial.sigma);
        if (std::abs(after - before) > kDriftLimit * scale) {
          accepted = false;
          break;
        }
        next = trial;
      }
      if (stopped) break;
      if (accepted) out.max_halvings_used = std::max(out.max_halvings_used, halvings);
    }
    if (stopped) break;
    if (!accepted) {
      throw Error(ErrorCode::StepTooLarge, "first-integral drift above 1e-6 per step after " +
                                               std::to_string(kMaxHalvings) + " halvings");
    }
    y = next;
    record(t0 + h, y);
  }
  return out;
}

/// u'' along a stationary curve with first integral c, as a function of u:
///   u'' = c^2 / (u^{2 alpha + 1} w(u)^2) * (alpha + u w'(u)/w(u)).
inline double radial_acceleration(Space space, double alpha, double c, double u) {
  space.require_valid_u(u);
  const double f = profile(space, alpha, u);
  if (f * f < c * c * (1.0 - 1e-12)) {
    throw Error(ErrorCode::OutsideDomain, "u^alpha w(u) < c at u = " + std::to_string(u));
  }
  const double w = space.warp(u);
  return c * c / (std::pow(u, 2.0 * alpha + 1.0) * w * w) * (alpha + u * space.warp_log_derivative(u));
}

// ---------------------------------------------------------------------------
// Admissible domain {u : u^alpha w(u) > c}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double u) const { return u > lo && u < hi; }
};

struct AdmissibleDomain {
  std::vector<Interval> intervals;
  std::vector<double> critical_points;  // roots of f' and of f = c, ascending

  bool empty() const { return intervals.empty(); }
  std::optional<Interval> containing(double u) const {
    for (const auto& iv : intervals) {
      if (iv.contains(u)) return iv;
    }
    return std::nullopt;
  }
};

namespace detail {

// Limit of log f at u -> 0+.
inline double log_profile_at_zero(double alpha) {
  if (alpha > -1.0) return -std::numeric_limits<double>::infinity();
  if (alpha < -1.0) return std::numeric_limits<double>::infinity();
  return 0.0;  // w(u)/u -> 1
}

inline double log_profile_at_top(Space space, double alpha) {
  if (space.is_hyperbolic()) return std::numeric_limits<double>::infinity();
  if (space.is_spherical()) return -std::numeric_limits<double>::infinity();
  if (alpha > -1.0) return std::numeric_limits<double>::infinity();
  if (alpha < -1.0) return -std::numeric_limits<double>::infinity();
  return 0.0;
}

// Interior critical point of f, if any: root of alpha/u + w'(u)/w(u).
inline std::optional<double> profile_critical_point(Space space, double alpha) {
  auto g = [&](double u) { return alpha / u + space.warp_log_derivative(u); };
  if (space.is_hyperbolic() && alpha < -1.0) {
    // g -> -inf at 0+, g(|alpha|) = coth|alpha| - 1 > 0.
    return numerics::bisect(g, 1e-12, -alpha);
  }
  if (space.is_spherical() && alpha > -1.0) {
    return numerics::bisect(g, 1e-12, std::numbers::pi - 1e-12);
  }
  return std::nullopt;
}

}  // namespace detail

/// Intervals of (0, u_max) on which u^alpha w(u) > c. f has at most one
/// interior critical point in every space form, so the domain is assembled
/// from at most two monotone pieces and their roots of f = c.
inline AdmissibleDomain admissible_domain(Space space, double alpha, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "c must be positive");
  if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be finite");
  const double log_c = std::log(c);
  const double top = space.u_max();
  auto h = [&](double u) { return log_profile(space, alpha, u) - log_c; };

  AdmissibleDomain dom;
  const std::optional<double> crit = detail::profile_critical_point(space, alpha);
  std::vector<double> breaks{0.0};
  if (crit) {
    breaks.push_back(*crit);
    dom.critical_points.push_back(*crit);
  }
  breaks.push_back(top);

  auto limit_value = [&](double u) {
    if (u == 0.0) return detail::log_profile_at_zero(alpha) - log_c;
    if (u == top) return detail::log_profile_at_top(space, alpha) - log_c;
    const double value = h(u);
    return std::abs(value) <= 1e-12 ? 0.0 : value;  // f touches c at the critical point
  };
  // Root of h on a monotone piece (lo, hi) where the end values straddle 0.
  auto solve = [&](double lo, double hi) {
    double a = lo, b = hi;
    if (a == 0.0) {
      a = std::min(1e-3, 0.5 * b);
      const double sign_at_zero = limit_value(0.0);
      while ((h(a) > 0.0) != (sign_at_zero > 0.0) && a > 1e-300) a *= 0.5;
    }
    if (std::isinf(b)) {
      b = std::max(2.0 * a, 1.0);
      const double sign_at_top = limit_value(top);
      while ((h(b) > 0.0) != (sign_at_top > 0.0) && b < 1e300) b *= 2.0;
    } else if (b == top) {
      b = top - std::min(1e-12, 0.5 * (top - a));
    }
    return numerics::bisect(h, a, b);
  };

  std::vector<Interval> pieces;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    const double at_lo = limit_value(lo), at_hi = limit_value(hi);
    if (at_lo > 0.0 && at_hi > 0.0) {
      pieces.push_back({lo, hi});
    } else if (at_lo > 0.0 && at_hi <= 0.0) {
      const double r = at_hi == 0.0 ? hi : solve(lo, hi);
      if (r != hi) dom.critical_points.push_back(r);
      pieces.push_back({lo, r});
    } else if (at_lo <= 0.0 && at_hi > 0.0) {
      const double r = at_lo == 0.0 ? lo : solve(lo, hi);
      if (r != lo) dom.critical_points.push_back(r);
      pieces.push_back({r, hi});
    }
  }
  // Adjacent pieces merge unless f touches c at the shared critical point.
  for (const auto& piece : pieces) {
    if (piece.hi <= piece.lo) continue;
    if (!dom.intervals.empty() && dom.intervals.back().hi == piece.lo &&
        std::abs(h(piece.lo)) > 1e-12) {
      dom.intervals.back().hi = piece.hi;
    } else {
      dom.intervals.push_back(piece);
    }
  }
  std::sort(dom.critical_points.begin(), dom.critical_points.end());
  return dom;
}

// ---------------------------------------------------------------------------
// Quadrature parametrization

/// Samples of the stationary curve on one monotone-u branch, from the
/// quadratures
///   t(u) = int f / sqrt(f^2 - c^2) ds,   v(u) = int c / (w sqrt(f^2 - c^2)) ds.
/// The interval endpoints may be turning points (roots of f = c); their
/// integrable singularities are removed by s = u* +- tau^2.
inline CurveSamples quadrature_parametrization(const StationaryParams& p, Interval interval, std::size_t n,
                                               double v0 = 0.0) {
  p.validate();
  const Space space = p.space;
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "need at least two nodes");
  if (!(interval.lo < interval.hi)) throw Error(ErrorCode::InvalidRange, "empty u interval");
  space.require_valid_u(interval.lo);
  space.require_valid_u(interval.hi);

  const double c = p.c;
  auto f = [&](double s) { return profile(space, p.alpha, s); };
  auto radicand = [&](double s) {
    const double fs = f(s);
    return (fs - c) * (fs + c);
  };
  for (double s : {interval.lo, interval.hi}) {
    if (f(s) < c * (1.0 - 1e-12)) {
      throw Error(ErrorCode::RadicandNonpositive, "u^alpha w(u) < c at endpoint u = " + std::to_string(s));
    }
  }
  constexpr int kProbe = 2000;
  for (int k = 1; k < kProbe; ++k) {
    const double s = interval.lo + (interval.hi - interval.lo) * k / kProbe;
    if (!(radicand(s) > 0.0)) {
      throw Error(ErrorCode::RadicandNonpositive, "radicand vanishes inside the interval at u = " + std::to_string(s));
    }
  }

  // Next to a turning point f - c is pure rounding; floor the radicand there
  // so the substituted integrand stays bounded.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * c * c;
  auto dt_du = [&](double s) { return f(s) / std::sqrt(std::max(radicand(s), floor)); };
  auto dv_du = [&](double s) { return c / (space.warp(s) * std::sqrt(std::max(radicand(s), floor))); };

  std::vector<double> nodes(n), T(n, 0.0), V(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = interval.lo + (interval.hi - interval.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  nodes.back() = interval.hi;
  for (std::size_t i = 1; i < n; ++i) {
    T[i] = T[i - 1] + numerics::integrate_sqrt_endpoints(dt_du, nodes[i - 1], nodes[i]).value;
    V[i] = V[i - 1] + numerics::integrate_sqrt_endpoints(dv_du, nodes[i - 1], nodes[i]).value;
  }

  CurveSamples out;
  out.space = space;
  out.arclength = true;
  out.sigma.emplace(n);
  out.t.resize(n);
  out.u.resize(n);
  out.v.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = p.branch_t > 0 ? k : n - 1 - k;
    const double t = p.branch_t > 0 ? T[i] : T.back() - T[i];
    const double dv = p.branch_t > 0 ? V[i] : V.back() - V[i];
    out.t[k] = t;
    out.u[k] = nodes[i];
    out.v[k] = v0 + p.branch_v * dv;
    const double fs = f(nodes[i]);
    const double sin_s = std::clamp(c / fs, 0.0, 1.0);
    const double cos_s = std::sqrt(std::max(0.0, 1.0 - sin_s * sin_s));
    (*out.sigma)[k] = std::atan2(p.branch_v * sin_s, p.branch_t * cos_s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics on sampled curves

/// EL residual, first-integral drift and turning angle from finite differences.
/// Fills the diagnostic columns of `c` in place.
inline void annotate(CurveSamples& c, double alpha) {
  const auto states = states_from_samples(c);
  const std::size_t n = c.size();
  c.el_residual.assign(n, 0.0);
  c.c_drift.assign(n, 0.0);
  if (!c.sigma) {
    c.sigma.emplace(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = c.space.warp(states[i].u);
      (*c.sigma)[i] = std::atan2(w * states[i].dv, states[i].du);
    }
  }
  for (std::size_t i = 0; i < n; ++i) c.el_residual[i] = el_residual(c.space, alpha, states[i]);
  const double c0 = first_integral(c.space, alpha, c.u[0], (*c.sigma)[0]);
  const double scale = std::abs(c0) > 0.0 ? std::abs(c0) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    c.c_drift[i] = (first_integral(c.space, alpha, c.u[i], (*c.sigma)[i]) - c0) / scale;
  }
}

inline double max_abs(const std::vector<double>& xs, std::size_t skip_ends = 0) {
  double m = 0.0;
  for (std::size_t i = skip_ends; i + skip_ends < xs.size(); ++i) m = std::max(m, std::abs(xs[i]));
  return m;
}

enum class ClosedVerdict { Pass, NotClosed, NotStationary, ConstraintViolated };

inline std::string_view to_string(ClosedVerdict v) {
  switch (v) {
    case ClosedVerdict::Pass: return "pass";
    case ClosedVerdict::NotClosed: return "not-closed";
    case ClosedVerdict::NotStationary: return "not-stationary";
    case ClosedVerdict::ConstraintViolated: return "constraint-violated";
  }
  return "?";
}

struct ClosedCurveReport {
  ClosedVerdict verdict = ClosedVerdict::Pass;
  double endpoint_gap = 0.0;
  double max_el_residual = 0.0;
  double residual_tolerance = 1e-6;
  std::optional<double> mean_radius;      // pole-centred circle radius (H2)
  std::optional<double> expected_alpha;   // -r coth r for that radius
  std::string hemisphere;                 // "upper", "lower", "both" (S2)
  std::vector<std::string> findings;

  bool pass() const { return verdict == ClosedVerdict::Pass; }
};

/// Checks the closed-curve consequences of the maximum principle on a closed
/// sampled curve that satisfies the EL equation:
///   H2: it must be a pole-centred circle of radius r with alpha = -r coth r;
///   S2: inside the open upper hemisphere alpha < 0, inside the lower alpha > 0,
///       and any curve meeting the upper hemisphere has alpha > -1.
inline ClosedCurveReport check_closed_curve_constraints(Space space, double alpha, const CurveSamples& c,
                                                        double residual_tol = 1e-6) {
  ClosedCurveReport rep;
  rep.residual_tolerance = residual_tol;
  c.validate();
  rep.endpoint_gap = geodesic_distance(space, c.point(0), c.point(c.size() - 1));
  if (rep.endpoint_gap > 1e-6) {
    rep.verdict = ClosedVerdict::NotClosed;
    rep.findings.push_back("endpoints are " + std::to_string(rep.endpoint_gap) + " apart");
    return rep;
  }
  const auto states = states_from_samples(c);
  for (const auto& s : states) rep.max_el_residual = std::max(rep.max_el_residual, std::abs(el_residual(space, alpha, s)));
  if (!(rep.max_el_residual <= residual_tol)) {
    rep.verdict = ClosedVerdict::NotStationary;
    rep.findings.push_back("max |kappa - alpha <n,xi>/d| = " + std::to_string(rep.max_el_residual) +
                           " exceeds " + std::to_string(residual_tol));
    return rep;
  }

  const auto [umin, umax] = std::minmax_element(c.u.begin(), c.u.end());
  if (space.is_hyperbolic()) {
    double mean = 0.0;
    for (double u : c.u) mean += u;
    mean /= static_cast<double>(c.size());
    rep.mean_radius = mean;
    rep.expected_alpha = -mean / std::tanh(mean);
    if (*umax - *umin > 1e-6) {
      rep.verdict = ClosedVerdict::ConstraintViolated;
      rep.findings.push_back("closed stationary curve is not a pole-centred circle (u varies by " +
                             std::to_string(*umax - *umin) + ")");
    } else if (std::abs(alpha - *rep.expected_alpha) > 1e-6) {
      rep.verdict = ClosedVerdict::ConstraintViolated;
      rep.findings.push_back("alpha differs from -r coth r = " + std::to_string(*rep.expected_alpha));
    } else {
      rep.findings.push_back("pole-centred circle with alpha = -r coth r");
    }
  } else if (space.is_spherical()) {
    constexpr double half = std::numbers::pi / 2.0;
    if (*umax < half) {
      rep.hemisphere = "upper";
      if (!(alpha < 0.0)) {
        rep.verdict = ClosedVerdict::ConstraintViolated;
        rep.findings.push_back("curve in the open upper hemisphere requires alpha < 0");
      } else {
        rep.findings.push_back("upper hemisphere: alpha < 0 holds");
      }
    } else if (*umin > half) {
      rep.hemisphere = "lower";
      if (!(alpha > 0.0)) {
        rep.verdict = ClosedVerdict::ConstraintViolated;
        rep.findings.push_back("curve in the open lower hemisphere requires alpha > 0");
      } else {
        rep.findings.push_back("lower hemisphere: alpha > 0 holds");
      }
    } else {
      rep.hemisphere = "both";
      rep.findings.push_back("curve meets both hemispheres: no sign constraint");
    }
    if (*umin < half) {
      if (!(alpha > -1.0)) {
        rep.verdict = ClosedVerdict::ConstraintViolated;
        rep.findings.push_back("curve away from N meeting the upper hemisphere requires alpha > -1");
      }
    }
  } else {
    rep.findings.push_back("euclidean baseline: no closed-curve constraint checked");
  }
  return rep;
}

}  // namespace alphastat
