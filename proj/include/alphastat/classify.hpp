#pragma once

// Constant-curvature curves C_{a,tau} = {p : <p, a>_eps = tau} and which of
// them are alpha-stationary.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>

#include "alphastat/curves.hpp"
#include "alphastat/error.hpp"
#include "alphastat/geometry.hpp"
#include "alphastat/numerics.hpp"

namespace alphastat {

enum class CurveType { Geodesic, Equidistant, Horocycle, Circle, GreatCircle, SmallCircle };

constexpr std::string_view to_string(CurveType t) {
  switch (t) {
    case CurveType::Geodesic: return "geodesic";
    case CurveType::Equidistant: return "equidistant";
    case CurveType::Horocycle: return "horocycle";
    case CurveType::Circle: return "circle";
    case CurveType::GreatCircle: return "great-circle";
    case CurveType::SmallCircle: return "small-circle";
  }
  return "?";
}

/// Circle radius r -> alpha at which the pole-centred circle of radius r is stationary.
inline double circle_alpha(Space space, double r) {
  if (!space.valid_u(r)) throw Error(ErrorCode::InvalidRadius, "radius " + std::to_string(r));
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: return -r / std::tanh(r);
    case Space::Kind::Spherical: return -r / std::tan(r);
    case Space::Kind::Euclidean: return -1.0;
  }
  return -1.0;
}

/// Inverse of circle_alpha where it is one-to-one: alpha < -1 in H2,
/// alpha in (-1, inf) minus {0} in S2. The S2 preimage pi/2 of alpha = 0
/// is the equator, a geodesic, and is not returned.
inline std::optional<double> invert_circle_alpha(Space space, double alpha) {
  if (!std::isfinite(alpha)) return std::nullopt;
  if (space.is_hyperbolic()) {
    if (!(alpha < -1.0)) return std::nullopt;
    // -r coth r is decreasing and below -r, so the root lies in (0, |alpha|].
    auto g = [&](double r) { return -r / std::tanh(r) - alpha; };
    return numerics::bisect(g, 1e-300, -alpha);
  }
  if (space.is_spherical()) {
    if (!(alpha > -1.0) || alpha == 0.0) return std::nullopt;
    auto g = [&](double r) { return -r / std::tan(r) - alpha; };
    double lo = 1e-300;
    double hi = std::numbers::pi / 2.0;
    if (alpha > 0.0) {
      lo = std::numbers::pi / 2.0;
      hi = std::numbers::pi;
      // -r cot r -> +inf at pi; back off until the bracket holds.
      double gap = 0.5;
      while (g(std::numbers::pi - gap) < 0.0 && gap > 1e-300) gap *= 0.5;
      hi = std::numbers::pi - gap;
    }
    return numerics::bisect(g, lo, hi);
  }
  return std::nullopt;
}

namespace detail {

/// Lorentz cross product: eps-orthogonal to both factors.
inline AmbientVec lorentz_cross(const AmbientVec& a, const AmbientVec& b) {
  const AmbientVec c = cross(a, b);
  return {c.x, c.y, -c.z};
}

inline AmbientVec normalized(Space space, const AmbientVec& a) {
  const double n2 = metric_dot(space, a, a);
  return (1.0 / std::sqrt(std::abs(n2))) * a;
}

}  // namespace detail

struct ConstCurvCurve {
  Space space = Space::hyperbolic();
  AmbientVec a;       // normalized: <a,a>_eps in {-1, 0, 1} (H2) or |a| = 1 (S2)
  double tau = 0.0;   // level, rescaled with a
  double delta = 0.0; // <a,a>_eps
  double lambda = 0.0;
  CurveType curve_type = CurveType::Geodesic;
  double kappa = 0.0;
  double orientation = 1.0;  // +1 or -1: traversal direction of point_at

  /// Unit normal at a point of the curve: -lambda (tau p + a) in H2,
  /// lambda (a - tau p) in S2.
  AmbientVec normal_at(const AmbientVec& p) const {
    if (space.is_hyperbolic()) return -lambda * (tau * p + a);
    return lambda * (a - tau * p);
  }

  bool centred_at_pole() const { return std::abs(a.x) < 1e-12 && std::abs(a.y) < 1e-12 && delta != 0.0; }
  bool through_pole() const { return std::abs(metric_dot(space, kPole, a) - tau) < 1e-12; }

  /// Radius of a pole-centred circle.
  std::optional<double> pole_radius() const {
    if (!centred_at_pole()) return std::nullopt;
    if (space.is_hyperbolic()) return std::acosh(std::abs(tau));
    return std::acos(std::clamp(tau * a.z, -1.0, 1.0));
  }

  bool closed() const {
    return curve_type == CurveType::Circle || curve_type == CurveType::GreatCircle ||
           curve_type == CurveType::SmallCircle;
  }

  /// Speed of the natural parametrization used by point_at.
  double parameter_speed() const {
    if (space.is_spherical()) return std::sqrt(1.0 - tau * tau);
    if (delta > 0.0) return std::sqrt(1.0 + tau * tau);
    if (delta < 0.0) return std::sqrt(tau * tau - 1.0);
    return 1.0;
  }

  /// Point at parameter s of an explicit parametrization of the level set.
  AmbientVec point_at(double s) const {
    if (space.is_spherical()) {
      const AmbientVec helper = std::abs(a.z) < 0.9 ? AmbientVec{0, 0, 1} : AmbientVec{1, 0, 0};
      const AmbientVec c = cross(a, helper);
      const AmbientVec e = (1.0 / std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z)) * c;
      const AmbientVec f = orientation * cross(a, e);
      return tau * a + parameter_speed() * (std::cos(s) * e + std::sin(s) * f);
    }
    const Space h = space;
    if (delta > 0.0) {
      // Lorentzian plane a^perp: future timelike e, spacelike f.
      const AmbientVec e = detail::normalized(h, AmbientVec{0, 0, 1} + a.z * a);
      const AmbientVec f = orientation * detail::normalized(h, detail::lorentz_cross(a, e));
      return tau * a + parameter_speed() * (std::cosh(s) * e + std::sinh(s) * f);
    }
    if (delta < 0.0) {
      const AmbientVec e = detail::normalized(h, AmbientVec{1, 0, 0} + a.x * a);
      const AmbientVec f = orientation * detail::normalized(h, detail::lorentz_cross(a, e));
      return -tau * a + parameter_speed() * (std::cos(s) * e + std::sin(s) * f);
    }
    // Horocycle: x0 + s f - s^2/(2 tau) a is a unit-speed parametrization.
    const AmbientVec b{-a.x, -a.y, a.z};
    const double a3sq = a.z * a.z;
    const AmbientVec x0 = (-1.0 / (2.0 * tau)) * a + (-tau / (2.0 * a3sq)) * b;
    const AmbientVec f = orientation * detail::normalized(h, detail::lorentz_cross(a, x0));
    return x0 + s * f + (-s * s / (2.0 * tau)) * a;
  }

  /// Samples on s in [s0, s1] as an arc-length curve in polar coordinates.
  CurveSamples sample(double s0, double s1, std::size_t n) const {
    if (n < 2) throw Error(ErrorCode::TooFewSamples, "need n >= 2");
    CurveSamples out;
    out.space = space;
    out.arclength = true;
    const double sp = parameter_speed();
    for (std::size_t i = 0; i < n; ++i) {
      const double s = s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(n - 1);
      PolarPoint p = to_polar(space, point_at(s));
      if (!space.valid_u(p.u) || p.u < 1e-9) {
        throw Error(ErrorCode::PoleTouching, "sample passes through the pole or antipode");
      }
      if (!out.v.empty()) p.v = out.v.back() + std::remainder(p.v - out.v.back(), 2.0 * std::numbers::pi);
      out.t.push_back(sp * (s - s0));
      out.u.push_back(p.u);
      out.v.push_back(p.v);
    }
    return out;
  }
};

namespace detail {

// Picks the traversal along which the clockwise-rotated tangent is normal_at(p),
// so that curvature computed from samples carries the sign of kappa.
inline void orient(ConstCurvCurve& c) {
  for (double s : {0.0, 0.37, 1.1}) {
    const AmbientVec p = c.point_at(s);
    const PolarPoint q = to_polar(c.space, p);
    if (!(q.u > 1e-3)) continue;
    const double hstep = 1e-5;
    const AmbientVec tangent = (1.0 / (2.0 * hstep)) * (c.point_at(s + hstep) - c.point_at(s - hstep));
    const AmbientVec xi = ray_tangent(c.space, q);
    const AmbientVec ev = angular_unit(q);
    const AmbientVec n = metric_dot(c.space, tangent, ev) * xi - metric_dot(c.space, tangent, xi) * ev;
    if (metric_dot(c.space, n, c.normal_at(p)) < 0.0) c.orientation = -1.0;
    return;
  }
}

}  // namespace detail

inline ConstCurvCurve classify_constant_curvature(Space space, AmbientVec a, double tau) {
  ConstCurvCurve c;
  c.space = space;
  if (space.is_euclidean()) throw Error(ErrorCode::InvalidArgument, "C_{a,tau} families are defined for h2 and s2");
  const double scale2 = a.x * a.x + a.y * a.y + a.z * a.z;
  if (!(scale2 > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "a must be nonzero");

  if (space.is_spherical()) {
    const double s = std::sqrt(scale2);
    c.a = (1.0 / s) * a;
    c.tau = tau / s;
    c.delta = 1.0;
    if (!(std::abs(c.tau) < 1.0)) throw Error(ErrorCode::EmptyLevelSet, "|tau| >= |a|: the level set is at most a point");
    c.lambda = 1.0 / std::sqrt(1.0 - c.tau * c.tau);
    c.kappa = c.lambda * c.tau;
    c.curve_type = c.tau == 0.0 ? CurveType::GreatCircle : CurveType::SmallCircle;
    detail::orient(c);
    return c;
  }

  const double d = metric_dot(space, a, a);
  if (std::abs(d) <= 1e-12 * scale2) {
    c.a = a;
    c.tau = tau;
    c.delta = 0.0;
    if (!(tau * a.z < 0.0)) throw Error(ErrorCode::EmptyLevelSet, "horocycle level needs tau of sign opposite to a_3");
  } else {
    const double s = std::sqrt(std::abs(d));
    c.a = (1.0 / s) * a;
    c.tau = tau / s;
    c.delta = d > 0.0 ? 1.0 : -1.0;
    if (c.delta < 0.0 && !(c.tau * c.a.z < -1.0)) {
      throw Error(ErrorCode::EmptyLevelSet, "timelike a needs tau a_3 < -|a|: the level set misses H2");
    }
  }
  c.lambda = 1.0 / std::sqrt(c.tau * c.tau + c.delta);
  c.kappa = c.lambda * c.tau;
  if (c.delta > 0.0) {
    c.curve_type = c.tau == 0.0 ? CurveType::Geodesic : CurveType::Equidistant;
  } else if (c.delta == 0.0) {
    c.curve_type = CurveType::Horocycle;
  } else {
    c.curve_type = CurveType::Circle;
  }
  detail::orient(c);
  return c;
}

/// True for geodesics through N (any alpha) and for pole-centred circles of
/// radius r with alpha = -r coth r (H2) or -r cot r (S2), within 1e-10.
inline bool is_stationary_constant_curvature(const ConstCurvCurve& c, double alpha) {
  const bool geodesic = c.curve_type == CurveType::Geodesic || c.curve_type == CurveType::GreatCircle;
  if (geodesic && c.tau == 0.0 && std::abs(c.a.z) < 1e-12) return true;
  if (const auto r = c.pole_radius()) {
    const double target = circle_alpha(c.space, *r);
    return std::abs(alpha - target) <= 1e-10 * std::max(1.0, std::abs(target));
  }
  return false;
}

}  // namespace alphastat
