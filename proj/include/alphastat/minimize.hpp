#pragma once

// Two-point minimization of E_alpha: geodesic references, a polyline
// descent in a global chart, a Dijkstra grid oracle, and multi-start checks
// of the minimizer theorems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "alphastat/curves.hpp"
#include "alphastat/energy.hpp"
#include "alphastat/error.hpp"
#include "alphastat/geometry.hpp"
#include "alphastat/numerics.hpp"

namespace alphastat {

inline constexpr double kMinimizerGuard = 1e-4;

struct MinimizeProblem {
  Space space = Space::hyperbolic();
  double alpha = 0.0;
  PolarPoint p1;
  PolarPoint p2;
  std::size_t n_vertices = 64;
  std::size_t max_iters = 500;
  double grad_tol = 1e-8;
  double pole_guard = kMinimizerGuard;

  void validate() const {
    space.require_valid_u(p1.u);
    space.require_valid_u(p2.u);
    if (n_vertices < 3) throw Error(ErrorCode::TooFewSamples, "a polyline needs at least 3 vertices");
    if (geodesic_distance(space, p1, p2) <= 0.0) throw Error(ErrorCode::InvalidArgument, "p1 and p2 coincide");
    if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha is not finite");
  }
};

struct MinimizeResult {
  CurveSamples curve;
  double energy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::size_t pole_rejections = 0;
  bool guard_limited = false;  // stopped because every shorter step still crossed the guard
  std::vector<double> energy_trace;
};

// ---------------------------------------------------------------------------
// Global chart: H2 uses (x, y) -> (x, y, sqrt(1 + rho^2)), S2 stereographic
// projection from the south pole, E2 the plane itself.

namespace chart {

inline double rho_of_u(Space space, double u) {
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: return std::sinh(u);
    case Space::Kind::Spherical: return std::tan(0.5 * u);
    case Space::Kind::Euclidean: return u;
  }
  return u;
}

inline double u_of_rho(Space space, double rho) {
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: return std::asinh(rho);
    case Space::Kind::Spherical: return 2.0 * std::atan(rho);
    case Space::Kind::Euclidean: return rho;
  }
  return rho;
}

inline double du_drho(Space space, double rho) {
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: return 1.0 / std::sqrt(1.0 + rho * rho);
    case Space::Kind::Spherical: return 2.0 / (1.0 + rho * rho);
    case Space::Kind::Euclidean: return 1.0;
  }
  return 1.0;
}

inline std::array<double, 2> from_polar(Space space, PolarPoint p) {
  const double rho = rho_of_u(space, p.u);
  return {rho * std::cos(p.v), rho * std::sin(p.v)};
}

inline PolarPoint to_polar(Space space, double x, double y) {
  return {u_of_rho(space, std::hypot(x, y)), std::atan2(y, x)};
}

inline AmbientVec point(Space space, double x, double y) {
  const double r2 = x * x + y * y;
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: return {x, y, std::sqrt(1.0 + r2)};
    case Space::Kind::Spherical: {
      const double q = 1.0 + r2;
      return {2.0 * x / q, 2.0 * y / q, (1.0 - r2) / q};
    }
    case Space::Kind::Euclidean: return {x, y, 0.0};
  }
  return {x, y, 0.0};
}

/// Partial derivatives of point(x, y) in x and y.
inline std::array<AmbientVec, 2> jacobian(Space space, double x, double y) {
  const double r2 = x * x + y * y;
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: {
      const double z = std::sqrt(1.0 + r2);
      return {AmbientVec{1.0, 0.0, x / z}, AmbientVec{0.0, 1.0, y / z}};
    }
    case Space::Kind::Spherical: {
      const double q = 1.0 + r2;
      const double q2 = q * q;
      return {AmbientVec{2.0 / q - 4.0 * x * x / q2, -4.0 * x * y / q2, -4.0 * x / q2},
              AmbientVec{-4.0 * x * y / q2, 2.0 / q - 4.0 * y * y / q2, -4.0 * y / q2}};
    }
    case Space::Kind::Euclidean: return {AmbientVec{1.0, 0.0, 0.0}, AmbientVec{0.0, 1.0, 0.0}};
  }
  return {};
}

}  // namespace chart

/// Chart coordinates (x0, y0, x1, y1, ...) of polar points.
inline std::vector<double> to_chart(Space space, std::span<const PolarPoint> pts) {
  std::vector<double> xy;
  xy.reserve(2 * pts.size());
  for (const PolarPoint& p : pts) {
    const auto c = chart::from_polar(space, p);
    xy.push_back(c[0]);
    xy.push_back(c[1]);
  }
  return xy;
}

/// Discrete energy sum_i ((u_i + u_{i+1}) / 2)^alpha * dist(P_i, P_{i+1}).
inline double discrete_energy(Space space, double alpha, std::span<const double> xy) {
  const std::size_t n = xy.size() / 2;
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const AmbientVec a = chart::point(space, xy[2 * i], xy[2 * i + 1]);
    const AmbientVec b = chart::point(space, xy[2 * i + 2], xy[2 * i + 3]);
    const double ua = chart::u_of_rho(space, std::hypot(xy[2 * i], xy[2 * i + 1]));
    const double ub = chart::u_of_rho(space, std::hypot(xy[2 * i + 2], xy[2 * i + 3]));
    e += std::pow(0.5 * (ua + ub), alpha) * ambient_distance(space, a, b);
  }
  return e;
}

/// Exact gradient of discrete_energy in the chart coordinates (endpoints included).
inline std::vector<double> discrete_energy_gradient(Space space, double alpha, std::span<const double> xy) {
  const std::size_t n = xy.size() / 2;
  std::vector<double> g(xy.size(), 0.0);
  std::vector<double> u(n), rho(n);
  std::vector<AmbientVec> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = std::hypot(xy[2 * i], xy[2 * i + 1]);
    u[i] = chart::u_of_rho(space, rho[i]);
    p[i] = chart::point(space, xy[2 * i], xy[2 * i + 1]);
  }
  auto add_u = [&](std::size_t i, double coeff) {
    if (rho[i] == 0.0) return;
    const double s = coeff * chart::du_drho(space, rho[i]) / rho[i];
    g[2 * i] += s * xy[2 * i];
    g[2 * i + 1] += s * xy[2 * i + 1];
  };
  auto add_p = [&](std::size_t i, const AmbientVec& dp) {
    const auto jac = chart::jacobian(space, xy[2 * i], xy[2 * i + 1]);
    g[2 * i] += metric_dot(space, dp, jac[0]);
    g[2 * i + 1] += metric_dot(space, dp, jac[1]);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const AmbientVec diff = p[i] - p[i + 1];
    const double chord = std::sqrt(std::max(metric_dot(space, diff, diff), 0.0));
    const double d = 2.0 * space.warp_inverse(0.5 * chord);
    const double m = 0.5 * (u[i] + u[i + 1]);
    const double weight = std::pow(m, alpha);
    const double du_coeff = alpha == 0.0 ? 0.0 : 0.5 * alpha * std::pow(m, alpha - 1.0) * d;
    add_u(i, du_coeff);
    add_u(i + 1, du_coeff);
    if (chord > 0.0) {
      // d = 2 w^{-1}(D / 2): dd/dD is 1/cosh(d/2), 1/cos(d/2) or 1.
      const double dd_dD = 1.0 / space.warp_prime(0.5 * d);
      // metric_dot(dp, J) later applies the eps sign, so pass diff itself.
      const double s = weight * dd_dD / chord;
      add_p(i, s * diff);
      add_p(i + 1, -s * diff);
    }
  }
  return g;
}

namespace detail {

inline CurveSamples curve_from_chart(Space space, std::span<const double> xy) {
  CurveSamples c;
  c.space = space;
  c.arclength = true;
  const std::size_t n = xy.size() / 2;
  AmbientVec prev;
  for (std::size_t i = 0; i < n; ++i) {
    PolarPoint q = chart::to_polar(space, xy[2 * i], xy[2 * i + 1]);
    const AmbientVec pt = chart::point(space, xy[2 * i], xy[2 * i + 1]);
    if (i == 0) {
      c.t.push_back(0.0);
    } else {
      q.v = c.v.back() + std::remainder(q.v - c.v.back(), 2.0 * std::numbers::pi);
      c.t.push_back(c.t.back() + ambient_distance(space, prev, pt));
    }
    c.u.push_back(q.u);
    c.v.push_back(q.v);
    prev = pt;
  }
  return c;
}

inline bool inside_guard(Space space, std::span<const double> xy, double guard) {
  for (std::size_t i = 0; i < xy.size() / 2; ++i) {
    const double u = chart::u_of_rho(space, std::hypot(xy[2 * i], xy[2 * i + 1]));
    if (!(u >= guard)) return false;
    if (space.is_spherical() && !(u <= std::numbers::pi - guard)) return false;
  }
  return true;
}

inline double norm(const std::vector<double>& g) {
  double s = 0.0;
  for (double x : g) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

namespace detail {

// Solves a symmetric tridiagonal system (diag a, off-diagonal b) in place;
// false when a pivot is not positive.
inline bool solve_tridiagonal_spd(std::vector<double> a, const std::vector<double>& b, std::vector<double>& rhs) {
  const std::size_t n = a.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (!(a[i - 1] > 0.0)) return false;
    const double f = b[i - 1] / a[i - 1];
    a[i] -= f * b[i - 1];
    rhs[i] -= f * rhs[i - 1];
  }
  if (!(a[n - 1] > 0.0)) return false;
  rhs[n - 1] /= a[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - b[i] * rhs[i + 1]) / a[i];
  return true;
}

}  // namespace detail

/// Damped Newton descent with Armijo backtracking. The init is resampled to
/// n_vertices points, uniformly in arc length; each interior vertex then moves
/// only along the chart normal of the segment p1 p2, so the midpoint rule
/// cannot gain energy by sliding vertices onto each other. The energy couples
/// neighbours only, so the Hessian is tridiagonal; it is built from three
/// colored central differences of the exact gradient.
inline MinimizeResult minimize_polyline(const MinimizeProblem& prob, const CurveSamples& init) {
  prob.validate();
  const Space space = prob.space;
  const CurveSamples start = resample_arclength(init, prob.n_vertices);
  if (geodesic_distance(space, start.point(0), prob.p1) > 1e-9 ||
      geodesic_distance(space, start.point(start.size() - 1), prob.p2) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "init does not join p1 to p2");
  }
  std::vector<PolarPoint> pts;
  for (std::size_t i = 0; i < start.size(); ++i) pts.push_back(start.point(i));
  pts.front() = prob.p1;
  pts.back() = prob.p2;
  const std::vector<double> base = to_chart(space, pts);
  if (!detail::inside_guard(space, base, prob.pole_guard)) {
    throw Error(ErrorCode::PoleCollision, "init passes within the pole guard");
  }
  const std::size_t n = pts.size();
  const std::size_t m = n - 2;
  const double cx = base[2 * n - 2] - base[0];
  const double cy = base[2 * n - 1] - base[1];
  const double cl = std::hypot(cx, cy);
  const double nx = -cy / cl;
  const double ny = cx / cl;

  auto place = [&](const std::vector<double>& s) {
    std::vector<double> out = base;
    for (std::size_t i = 0; i < m; ++i) {
      out[2 * i + 2] += s[i] * nx;
      out[2 * i + 3] += s[i] * ny;
    }
    return out;
  };
  auto gradient = [&](const std::vector<double>& s) {
    const std::vector<double> full = discrete_energy_gradient(space, prob.alpha, place(s));
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = full[2 * i + 2] * nx + full[2 * i + 3] * ny;
    return g;
  };
  auto admissible = [&](const std::vector<double>& s) { return detail::inside_guard(space, place(s), prob.pole_guard); };

  MinimizeResult res;
  std::vector<double> s(m, 0.0);
  double e = discrete_energy(space, prob.alpha, base);
  res.energy_trace.push_back(e);
  std::vector<double> g = gradient(s);
  double gn = detail::norm(g);
  const double fd_step = 1e-6 * cl;
  const double max_move = 0.1 * cl;
  double mu = 0.0;

  for (res.iterations = 0; res.iterations < prob.max_iters; ++res.iterations) {
    if (gn < prob.grad_tol) break;

    // Tridiagonal Hessian; column k only feeds rows k-1, k, k+1.
    std::vector<double> diag(m, 0.0), off(m > 0 ? m - 1 : 0, 0.0), off_count(off.size(), 0.0);
    for (std::size_t color = 0; color < 3; ++color) {
      std::vector<double> sp = s, sm = s;
      bool any = false;
      for (std::size_t k = color; k < m; k += 3) {
        sp[k] += fd_step;
        sm[k] -= fd_step;
        any = true;
      }
      if (!any) continue;
      const std::vector<double> gp = gradient(sp);
      const std::vector<double> gm = gradient(sm);
      for (std::size_t k = color; k < m; k += 3) {
        diag[k] = (gp[k] - gm[k]) / (2.0 * fd_step);
        if (k > 0) {
          off[k - 1] += (gp[k - 1] - gm[k - 1]) / (2.0 * fd_step);
          off_count[k - 1] += 1.0;
        }
        if (k + 1 < m) {
          off[k] += (gp[k + 1] - gm[k + 1]) / (2.0 * fd_step);
          off_count[k] += 1.0;
        }
      }
    }
    for (std::size_t k = 0; k < off.size(); ++k) off[k] /= std::max(off_count[k], 1.0);

    // Newton direction, with Levenberg shift until the system is positive definite.
    std::vector<double> dir;
    double scale = 0.0;
    for (double d : diag) scale = std::max(scale, std::abs(d));
    mu = mu > 0.0 ? 0.1 * mu : 0.0;
    for (int tries = 0; tries < 40; ++tries) {
      std::vector<double> shifted = diag;
      for (double& d : shifted) d += mu;
      std::vector<double> rhs(m);
      for (std::size_t k = 0; k < m; ++k) rhs[k] = -g[k];
      if (detail::solve_tridiagonal_spd(shifted, off, rhs)) {
        dir = std::move(rhs);
        break;
      }
      mu = std::max(10.0 * mu, 1e-8 * std::max(scale, 1.0));
    }
    double slope = 0.0;
    for (std::size_t k = 0; k < m; ++k) slope += dir.empty() ? 0.0 : dir[k] * g[k];
    if (dir.empty() || !(slope < 0.0)) {
      dir.assign(m, 0.0);
      for (std::size_t k = 0; k < m; ++k) dir[k] = -g[k] / std::max(scale, 1.0);
      slope = 0.0;
      for (std::size_t k = 0; k < m; ++k) slope += dir[k] * g[k];
    }
    double dmax = 0.0;
    for (double d : dir) dmax = std::max(dmax, std::abs(d));
    double t = dmax > max_move ? max_move / dmax : 1.0;

    bool accepted = false;
    bool blocked = false;
    std::vector<double> trial(m);
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      for (std::size_t k = 0; k < m; ++k) trial[k] = s[k] + t * dir[k];
      if (!admissible(trial)) {
        ++res.pole_rejections;
        blocked = true;
        continue;
      }
      const double et = discrete_energy(space, prob.alpha, place(trial));
      if (et <= e + 1e-4 * t * slope) {
        accepted = true;
        e = et;
        break;
      }
    }
    if (!accepted) {
      res.guard_limited = blocked;
      break;
    }
    s = trial;
    res.energy_trace.push_back(e);
    g = gradient(s);
    gn = detail::norm(g);
  }
  res.converged = gn < prob.grad_tol;
  res.gradient_norm = gn;
  res.energy = e;
  res.curve = detail::curve_from_chart(space, place(s));
  return res;
}

/// Minimizing geodesic from p1 to p2 as n arc-length samples. Where the
/// geodesic meets N (or the south pole of S2), the sample there is replaced
/// by two samples at distance `guard` on either side.
inline CurveSamples geodesic_between(Space space, PolarPoint p1, PolarPoint p2, std::size_t n,
                                     double guard = kMinimizerGuard) {
  space.require_valid_u(p1.u);
  space.require_valid_u(p2.u);
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "need n >= 2");
  const double d = geodesic_distance(space, p1, p2);
  if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "p1 and p2 coincide");
  if (space.is_spherical() && d > std::numbers::pi - 1e-12) {
    throw Error(ErrorCode::AntipodalEndpoints, "antipodal endpoints: the minimizing geodesic is not unique");
  }
  const AmbientVec a = space.is_euclidean() ? AmbientVec{p1.u * std::cos(p1.v), p1.u * std::sin(p1.v), 0.0}
                                            : embed(space, p1);
  const AmbientVec b = space.is_euclidean() ? AmbientVec{p2.u * std::cos(p2.v), p2.u * std::sin(p2.v), 0.0}
                                            : embed(space, p2);

  // Fractions of the geodesic at which it crosses a pole.
  std::vector<double> crossings;
  const double tol = 1e-12 * std::max(1.0, d);
  if (std::abs(d - (p1.u + p2.u)) <= tol) crossings.push_back(p1.u / d);
  if (space.is_spherical()) {
    constexpr double pi = std::numbers::pi;
    if (std::abs(d - ((pi - p1.u) + (pi - p2.u))) <= tol) crossings.push_back((pi - p1.u) / d);
  }

  std::vector<double> fractions;
  const double gap = guard / d;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(n - 1);
    bool near = false;
    for (double c : crossings) near = near || std::abs(f - c) < gap;
    if (!near) fractions.push_back(f);
  }
  for (double c : crossings) {
    fractions.push_back(c - gap);
    fractions.push_back(c + gap);
  }
  std::sort(fractions.begin(), fractions.end());

  CurveSamples out;
  out.space = space;
  out.arclength = true;
  for (double f : fractions) {
    PolarPoint q = f == 0.0 ? p1 : f == 1.0 ? p2 : to_polar(space, geodesic_interpolate(space, a, b, d, f));
    if (!out.v.empty()) q.v = out.v.back() + std::remainder(q.v - out.v.back(), 2.0 * std::numbers::pi);
    out.t.push_back(f * d);
    out.u.push_back(q.u);
    out.v.push_back(q.v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid oracle

/// Polar grid: u nodes u_lo + j h (j = 0..nu), nv angular nodes starting at v0.
struct DpGrid {
  std::size_t nu = 200;
  std::size_t nv = 400;
  double u_lo = 0.0;
  double u_hi = 0.0;
  double v0 = 0.0;
};

/// Band [u_lo, u_hi] with nu intervals, near [lo_target, hi_target], on
/// which both endpoint radii are nodes; v0 = p1.v.
inline DpGrid make_band(Space space, PolarPoint p1, PolarPoint p2, std::size_t nu, std::size_t nv,
                        double lo_target, double hi_target) {
  const double a = std::min(p1.u, p2.u);
  const double b = std::max(p1.u, p2.u);
  lo_target = std::min(lo_target, a);
  hi_target = std::max(hi_target, b);
  double h = (hi_target - lo_target) / static_cast<double>(nu);
  std::size_t k = 0;
  if (b - a > 1e-12) {
    k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround((b - a) / h)));
    k = std::min(k, nu);
    h = (b - a) / static_cast<double>(k);
  }
  auto below = static_cast<std::size_t>(std::floor((a - lo_target) / h + 1e-9));
  while (below > 0 && a - static_cast<double>(below) * h < 0.5 * h) --below;
  below = std::min(below, nu - k);
  DpGrid g;
  g.nu = nu;
  g.nv = nv;
  g.u_lo = a - static_cast<double>(below) * h;
  g.u_hi = g.u_lo + static_cast<double>(nu) * h;
  g.v0 = p1.v;
  if (space.is_spherical() && !(g.u_hi < std::numbers::pi)) {
    throw Error(ErrorCode::InvalidRange, "band reaches the south pole");
  }
  return g;
}

/// Energy of the geodesic edge between two points, 8-point Gauss-Legendre.
inline double edge_energy(Space space, double alpha, PolarPoint p, PolarPoint q) {
  auto amb = [&](PolarPoint r) {
    return space.is_euclidean() ? AmbientVec{r.u * std::cos(r.v), r.u * std::sin(r.v), 0.0} : embed(space, r);
  };
  const AmbientVec a = amb(p);
  const AmbientVec b = amb(q);
  const double d = geodesic_distance(space, p, q);
  double s = 0.0;
  for (const auto& [x, w] : numerics::kGaussLegendre8) {
    s += w * std::pow(ambient_distance_to_pole(space, geodesic_interpolate(space, a, b, d, x)), alpha);
  }
  return s * d;
}

/// Dijkstra over the 8-connected polar grid; edges are geodesic segments
/// weighted by their energy, so the result bounds the minimum from above.
inline double dp_grid_min(Space space, double alpha, PolarPoint p1, PolarPoint p2, const DpGrid& grid) {
  if (grid.nu < 1 || grid.nv < 3) throw Error(ErrorCode::InvalidArgument, "grid too small");
  if (!(grid.u_lo > 0.0 && grid.u_hi > grid.u_lo) || !space.valid_u(grid.u_hi)) {
    throw Error(ErrorCode::InvalidRange, "grid band must lie inside (0, u_max)");
  }
  const double h = (grid.u_hi - grid.u_lo) / static_cast<double>(grid.nu);
  const double dv = 2.0 * std::numbers::pi / static_cast<double>(grid.nv);
  auto locate = [&](PolarPoint p) {
    const double jf = (p.u - grid.u_lo) / h;
    const double kf = std::remainder(p.v - grid.v0, 2.0 * std::numbers::pi) / dv;
    const double j = std::round(jf);
    double k = std::round(kf);
    if (std::abs(jf - j) > 1e-7 || std::abs(kf - k) > 1e-7 || j < 0 || j > static_cast<double>(grid.nu)) {
      throw Error(ErrorCode::EndpointsNotOnGrid, "endpoint is not a grid node");
    }
    if (k < 0) k += static_cast<double>(grid.nv);
    return static_cast<std::size_t>(j) * grid.nv + static_cast<std::size_t>(k) % grid.nv;
  };
  const std::size_t src = locate(p1);
  const std::size_t dst = locate(p2);

  // Edge weights depend on the ring and direction only (rotation symmetry).
  constexpr int kDirs[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};
  std::vector<std::array<double, 8>> weight(grid.nu + 1);
  for (std::size_t j = 0; j <= grid.nu; ++j) {
    const double u = grid.u_lo + static_cast<double>(j) * h;
    for (int dir = 0; dir < 8; ++dir) {
      const long jj = static_cast<long>(j) + kDirs[dir][0];
      if (jj < 0 || jj > static_cast<long>(grid.nu)) {
        weight[j][dir] = std::numeric_limits<double>::infinity();
        continue;
      }
      const double u2 = grid.u_lo + static_cast<double>(jj) * h;
      weight[j][dir] = edge_energy(space, alpha, {u, 0.0}, {u2, kDirs[dir][1] * dv});
    }
  }

  const std::size_t total = (grid.nu + 1) * grid.nv;
  std::vector<double> dist(total, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.push({0.0, src});
  while (!queue.empty()) {
    const auto [du, node] = queue.top();
    queue.pop();
    if (du > dist[node]) continue;
    if (node == dst) return du;
    const std::size_t j = node / grid.nv;
    const std::size_t k = node % grid.nv;
    for (int dir = 0; dir < 8; ++dir) {
      const double w = weight[j][dir];
      if (!std::isfinite(w)) continue;
      const std::size_t jj = j + kDirs[dir][0];
      const std::size_t kk = (k + grid.nv + kDirs[dir][1]) % grid.nv;
      const std::size_t next = jj * grid.nv + kk;
      if (du + w < dist[next]) {
        dist[next] = du + w;
        queue.push({dist[next], next});
      }
    }
  }
  throw Error(ErrorCode::Disconnected, "target unreachable on the grid");
}

// ---------------------------------------------------------------------------
// Multi-start verification

enum class Scenario { SameRay, ThroughPole };

constexpr std::string_view to_string(Scenario s) {
  return s == Scenario::SameRay ? "same-ray" : "through-pole";
}

inline Scenario parse_scenario(std::string_view s) {
  if (s == "same-ray") return Scenario::SameRay;
  if (s == "through-pole") return Scenario::ThroughPole;
  throw Error(ErrorCode::InvalidArgument, "unknown scenario '" + std::string(s) + "'");
}

/// Random smooth init from p1 to p2: the chart segment plus a few sine modes
/// normal to it. Vertices are kept at least `clearance` away from the poles.
inline CurveSamples random_init(Space space, PolarPoint p1, PolarPoint p2, std::size_t n, std::uint64_t seed,
                                double clearance = 0.05) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto a = chart::from_polar(space, p1);
  const auto b = chart::from_polar(space, p2);
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len = std::hypot(dx, dy);
  const double nx = -dy / len;
  const double ny = dx / len;
  std::array<double, 4> amp{};
  for (double& c : amp) c = 0.15 * len * unit(rng);

  std::vector<double> xy(2 * n);
  auto build = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(n - 1);
      double off = 0.0;
      for (std::size_t m = 0; m < amp.size(); ++m) off += amp[m] * std::sin((m + 1) * std::numbers::pi * s);
      xy[2 * i] = a[0] + s * dx + off * nx;
      xy[2 * i + 1] = a[1] + s * dy + off * ny;
    }
  };
  build();
  for (int tries = 0; tries < 60 && !detail::inside_guard(space, xy, clearance); ++tries) {
    amp[0] += (amp[0] >= 0.0 ? 0.05 : -0.05) * len;
    build();
  }
  if (!detail::inside_guard(space, xy, clearance)) {
    throw Error(ErrorCode::PoleCollision, "could not build an init clear of the poles");
  }
  xy[0] = a[0];
  xy[1] = a[1];
  CurveSamples c = detail::curve_from_chart(space, xy);
  c.u.front() = p1.u;
  c.u.back() = p2.u;
  return c;
}

struct VerifyOptions {
  std::size_t starts = 5;
  std::uint64_t seed = 20240601;
  std::size_t n_vertices = 64;
  std::size_t max_iters = 500;
  double tolerance = 1e-3;
  bool run_dp = true;
  std::size_t dp_nu = 200;
  std::size_t dp_nv = 400;
  unsigned jobs = 1;
};

struct VerifyReport {
  Space space = Space::hyperbolic();
  double alpha = 0.0;
  Scenario scenario = Scenario::SameRay;
  PolarPoint p1;
  PolarPoint p2;
  double reference_energy = 0.0;
  std::vector<double> optimized_energies;
  std::vector<std::uint64_t> seeds;
  std::optional<double> dp_energy;
  double tolerance = 0.0;
  bool pass = false;
};

/// Endpoints used for each scenario.
inline std::pair<PolarPoint, PolarPoint> scenario_endpoints(Space space, Scenario s) {
  if (s == Scenario::SameRay) return {{0.5, 0.0}, {1.5, 0.0}};
  if (space.is_spherical()) return {{1.0, 0.0}, {1.0, std::numbers::pi}};
  return {{0.8, 0.0}, {1.2, std::numbers::pi}};
}

/// Closed-form energy of the ray or of the broken ray through N.
inline double scenario_reference(double alpha, Scenario s, PolarPoint p1, PolarPoint p2) {
  if (s == Scenario::SameRay) return energy_ray_segment(alpha, std::min(p1.u, p2.u), std::max(p1.u, p2.u));
  const double beta = alpha + 1.0;
  return (std::pow(p1.u, beta) + std::pow(p2.u, beta)) / beta;
}

inline VerifyReport verify_minimizer_theorems(Space space, double alpha, Scenario scenario,
                                              const VerifyOptions& opt = {}) {
  if (space.is_euclidean()) throw Error(ErrorCode::InvalidArgument, "scenarios are defined for h2 and s2");
  if (scenario == Scenario::ThroughPole && !(alpha > 0.0)) {
    throw Error(ErrorCode::HypothesisViolated, "the through-pole minimizer statement assumes alpha > 0");
  }
  if (opt.starts < 1) throw Error(ErrorCode::InvalidArgument, "need at least one start");
  VerifyReport rep;
  rep.space = space;
  rep.alpha = alpha;
  rep.scenario = scenario;
  std::tie(rep.p1, rep.p2) = scenario_endpoints(space, scenario);
  rep.reference_energy = scenario_reference(alpha, scenario, rep.p1, rep.p2);
  rep.tolerance = opt.tolerance;

  MinimizeProblem prob{space, alpha, rep.p1, rep.p2, opt.n_vertices, opt.max_iters};
  auto run = [&](std::uint64_t seed) {
    const CurveSamples init = random_init(space, rep.p1, rep.p2, opt.n_vertices, seed);
    return minimize_polyline(prob, init).energy;
  };
  for (std::size_t i = 0; i < opt.starts; ++i) rep.seeds.push_back(opt.seed + i);
  rep.optimized_energies.resize(opt.starts);
  const unsigned jobs = std::max(1u, opt.jobs);
  for (std::size_t first = 0; first < opt.starts; first += jobs) {
    std::vector<std::future<double>> pending;
    const std::size_t last = std::min(opt.starts, first + jobs);
    for (std::size_t i = first; i < last; ++i) {
      pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run, rep.seeds[i]));
    }
    for (std::size_t i = first; i < last; ++i) rep.optimized_energies[i] = pending[i - first].get();
  }

  if (opt.run_dp) {
    const double hi = std::max(rep.p1.u, rep.p2.u) + 0.25;
    const double lo = scenario == Scenario::ThroughPole ? 0.0 : std::min(rep.p1.u, rep.p2.u) - 0.25;
    const DpGrid grid = make_band(space, rep.p1, rep.p2, opt.dp_nu, opt.dp_nv, lo, hi);
    rep.dp_energy = dp_grid_min(space, alpha, rep.p1, rep.p2, grid);
  }

  rep.pass = true;
  for (double e : rep.optimized_energies) rep.pass = rep.pass && e >= rep.reference_energy - opt.tolerance;
  if (rep.dp_energy) rep.pass = rep.pass && *rep.dp_energy >= rep.reference_energy - opt.tolerance;
  return rep;
}

/// True when p1 and p2 lie on opposite rays with u1 + u2 > pi in S2: the
/// minimizing geodesic then runs through the south pole, a case no
/// minimizer statement covers.
inline bool is_south_pole_case(Space space, PolarPoint p1, PolarPoint p2) {
  if (!space.is_spherical()) return false;
  const double dv = std::abs(std::remainder(p1.v - p2.v, 2.0 * std::numbers::pi));
  return std::abs(dv - std::numbers::pi) < 1e-12 && p1.u + p2.u > std::numbers::pi;
}

}  // namespace alphastat
