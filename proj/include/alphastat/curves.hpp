#pragma once

// Curve representations and their differential quantities.
//
// Orientation convention: the unit normal is n = gamma' x_eps gamma / |gamma'|,
// which in the orthonormal frame (xi, e_v) of the polar chart reads
//   n = (w(u) v' xi - u' e_v) / |gamma'|,
// i.e. the tangent rotated clockwise. Curvature and <n, xi> are signed with
// respect to this normal; a pole-centred circle traversed with v increasing
// therefore has kappa = -w'(r)/w(r) and <n, xi> = +1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "alphastat/error.hpp"
#include "alphastat/geometry.hpp"
#include "alphastat/numerics.hpp"

namespace alphastat {

/// One jet point (u, v, u', v', u'', v'') of a curve in polar coordinates.
struct CurveState {
  double u = 0.0;
  double v = 0.0;
  double du = 0.0;
  double dv = 0.0;
  double ddu = 0.0;
  double ddv = 0.0;

  PolarPoint point() const { return {u, v}; }
};

/// A sampled curve. `t` is the curve parameter; `arclength` marks samples
/// whose parameter is arc length (unit speed).
struct CurveSamples {
  Space space = Space::hyperbolic();
  std::vector<double> t;
  std::vector<double> u;
  std::vector<double> v;
  std::optional<std::vector<double>> sigma;
  bool arclength = false;

  // Per-sample diagnostics; empty when not computed.
  std::vector<double> el_residual;
  std::vector<double> c_drift;

  std::size_t size() const { return t.size(); }
  PolarPoint point(std::size_t i) const { return {u[i], v[i]}; }
  double length() const { return t.empty() ? 0.0 : t.back() - t.front(); }

  /// Throws unless the arrays are consistent, t is strictly increasing and
  /// every u lies strictly inside (0, u_max).
  void validate() const {
    const std::size_t n = t.size();
    if (n < 2) throw Error(ErrorCode::TooFewSamples, "a curve needs at least two samples");
    if (u.size() != n || v.size() != n || (sigma && sigma->size() != n)) {
      throw Error(ErrorCode::InvalidArgument, "sample arrays differ in length");
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(t[i] > t[i - 1])) throw Error(ErrorCode::InvalidArgument, "t is not strictly increasing");
    }
    for (double ui : u) {
      if (!space.valid_u(ui)) throw Error(ErrorCode::PoleTouching, "sample u = " + std::to_string(ui));
    }
  }
};

inline double speed(Space space, const CurveState& s) {
  const double w = space.warp(s.u);
  return std::sqrt(s.du * s.du + w * w * s.dv * s.dv);
}

namespace detail {
inline double checked_speed(Space space, const CurveState& s) {
  space.require_valid_u(s.u);
  const double sp = speed(space, s);
  if (!(sp >= 1e-14)) throw Error(ErrorCode::DegenerateState, "|gamma'| below 1e-14");
  return sp;
}
}  // namespace detail

/// Ambient velocity gamma' = u' Psi_u + v' Psi_v.
inline AmbientVec ambient_velocity(Space space, const CurveState& s) {
  const PolarPoint p = s.point();
  return s.du * ray_tangent(space, p) + (space.warp(s.u) * s.dv) * angular_unit(p);
}

inline AmbientVec unit_normal(Space space, const CurveState& s) {
  const double sp = detail::checked_speed(space, s);
  const PolarPoint p = s.point();
  const double w = space.warp(s.u);
  return (w * s.dv / sp) * ray_tangent(space, p) - (s.du / sp) * angular_unit(p);
}

/// Geodesic curvature <gamma'', n>_eps / |gamma'|^2, evaluated in coordinates.
inline double curvature(Space space, const CurveState& s) {
  const double sp = detail::checked_speed(space, s);
  const double w = space.warp(s.u);
  const double wp = space.warp_prime(s.u);
  const double num = wp * s.dv * (2.0 * s.du * s.du + w * w * s.dv * s.dv) +
                     w * (s.du * s.ddv - s.ddu * s.dv);
  return -num / (sp * sp * sp);
}

/// kappa - alpha <n, xi>_eps / d: the curvature weighted by the density d^alpha.
inline double weighted_curvature(Space space, double alpha, const CurveState& s) {
  const double kappa = curvature(space, s);
  const double n_xi = metric_dot(space, unit_normal(space, s), ray_tangent(space, s.point()));
  return kappa - alpha * n_xi / s.u;
}

/// Turning angle: u' = cos(sigma), w(u) v' = sin(sigma).
inline double sigma_of_state(Space space, const CurveState& s) {
  space.require_valid_u(s.u);
  const double w = space.warp(s.u);
  const double sq = s.du * s.du + w * w * s.dv * s.dv;
  if (std::abs(sq - 1.0) > 1e-6) {
    throw Error(ErrorCode::NotUnitSpeed, "u'^2 + w^2 v'^2 = " + std::to_string(sq));
  }
  return std::atan2(w * s.dv, s.du);
}

/// Jets at every sample, by finite differences in the curve parameter.
inline std::vector<CurveState> states_from_samples(const CurveSamples& c) {
  c.validate();
  auto [du, ddu] = numerics::differentiate(c.t, c.u);
  auto [dv, ddv] = numerics::differentiate(c.t, c.v);
  std::vector<CurveState> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = {c.u[i], c.v[i], du[i], dv[i], ddu[i], ddv[i]};
  }
  return out;
}

/// Cumulative arc length along the samples: t itself for arc-length curves,
/// otherwise the sum of intrinsic chord lengths.
inline std::vector<double> cumulative_length(const CurveSamples& c) {
  std::vector<double> s(c.size(), 0.0);
  for (std::size_t i = 1; i < c.size(); ++i) {
    s[i] = s[i - 1] + (c.arclength ? c.t[i] - c.t[i - 1]
                                    : geodesic_distance(c.space, c.point(i - 1), c.point(i)));
  }
  return s;
}

/// n samples equally spaced in arc length, linear interpolation in (u, v).
/// The output parameter is arc length starting at the input's first t.
inline CurveSamples resample_arclength(const CurveSamples& c, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "resampling needs n >= 2");
  c.validate();
  const std::vector<double> s = cumulative_length(c);
  const double total = s.back();
  CurveSamples out;
  out.space = c.space;
  out.arclength = true;
  out.t.resize(n);
  out.u.resize(n);
  out.v.resize(n);
  const double t0 = c.t.front();
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = k + 1 == n ? total : total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < s.size() && s[seg + 1] < target) ++seg;
    const double span = s[seg + 1] - s[seg];
    const double f = span > 0.0 ? std::clamp((target - s[seg]) / span, 0.0, 1.0) : 0.0;
    out.t[k] = t0 + target;
    out.u[k] = c.u[seg] + f * (c.u[seg + 1] - c.u[seg]);
    out.v[k] = c.v[seg] + f * (c.v[seg + 1] - c.v[seg]);
  }
  return out;
}

/// True when the samples are uniformly spaced in t (relative tolerance).
inline bool uniform_parameter(const CurveSamples& c, double rel_tol = 1e-9) {
  if (c.size() < 3) return true;
  const double h = (c.t.back() - c.t.front()) / static_cast<double>(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (std::abs(c.t[i] - c.t[i - 1] - h) > rel_tol * h) return false;
  }
  return true;
}

}  // namespace alphastat
