#pragma once

// Ambient primitives for the three space forms. Every model is written in
// geodesic polar coordinates (u, v) around the pole N = (0, 0, 1), where the
// metric is du^2 + w(u)^2 dv^2 and w is the warp function of the space.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "alphastat/error.hpp"

namespace alphastat {

struct AmbientVec {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend AmbientVec operator+(const AmbientVec& a, const AmbientVec& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend AmbientVec operator-(const AmbientVec& a, const AmbientVec& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend AmbientVec operator*(double s, const AmbientVec& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend AmbientVec operator*(const AmbientVec& a, double s) { return s * a; }
  friend AmbientVec operator-(const AmbientVec& a) { return {-a.x, -a.y, -a.z}; }
};

inline AmbientVec cross(const AmbientVec& a, const AmbientVec& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct PolarPoint {
  double u = 0.0;  // distance to the pole
  double v = 0.0;  // polar angle
};

struct DiskPoint {
  double x = 0.0;
  double y = 0.0;
};

class Space {
 public:
  enum class Kind { Hyperbolic, Spherical, Euclidean };

  constexpr explicit Space(Kind kind) : kind_(kind) {}

  static constexpr Space hyperbolic() { return Space(Kind::Hyperbolic); }
  static constexpr Space spherical() { return Space(Kind::Spherical); }
  static constexpr Space euclidean() { return Space(Kind::Euclidean); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_hyperbolic() const { return kind_ == Kind::Hyperbolic; }
  constexpr bool is_spherical() const { return kind_ == Kind::Spherical; }
  constexpr bool is_euclidean() const { return kind_ == Kind::Euclidean; }

  /// Signature of the z coordinate in the ambient metric.
  constexpr int epsilon() const { return kind_ == Kind::Hyperbolic ? -1 : 1; }

  double warp(double u) const {
    switch (kind_) {
      case Kind::Hyperbolic: return std::sinh(u);
      case Kind::Spherical: return std::sin(u);
      case Kind::Euclidean: return u;
    }
    return u;
  }

  double warp_prime(double u) const {
    switch (kind_) {
      case Kind::Hyperbolic: return std::cosh(u);
      case Kind::Spherical: return std::cos(u);
      case Kind::Euclidean: return 1.0;
    }
    return 1.0;
  }

  /// w''(u) / w(u): +1, -1, 0.
  constexpr double curvature_sign() const {
    switch (kind_) {
      case Kind::Hyperbolic: return 1.0;
      case Kind::Spherical: return -1.0;
      case Kind::Euclidean: return 0.0;
    }
    return 0.0;
  }

  /// w'(u) / w(u), i.e. coth, cot or 1/u.
  double warp_log_derivative(double u) const {
    switch (kind_) {
      case Kind::Hyperbolic: return 1.0 / std::tanh(u);
      case Kind::Spherical: return 1.0 / std::tan(u);
      case Kind::Euclidean: return 1.0 / u;
    }
    return 1.0 / u;
  }

  double warp_inverse(double w) const {
    switch (kind_) {
      case Kind::Hyperbolic: return std::asinh(w);
      case Kind::Spherical: return std::asin(std::clamp(w, -1.0, 1.0));
      case Kind::Euclidean: return w;
    }
    return w;
  }

  /// z component of the embedding: cosh u, cos u, 0.
  double height(double u) const {
    switch (kind_) {
      case Kind::Hyperbolic: return std::cosh(u);
      case Kind::Spherical: return std::cos(u);
      case Kind::Euclidean: return 0.0;
    }
    return 0.0;
  }

  double height_prime(double u) const {
    switch (kind_) {
      case Kind::Hyperbolic: return std::sinh(u);
      case Kind::Spherical: return -std::sin(u);
      case Kind::Euclidean: return 0.0;
    }
    return 0.0;
  }

  constexpr double u_max() const {
    return kind_ == Kind::Spherical ? std::numbers::pi : std::numeric_limits<double>::infinity();
  }

  bool valid_u(double u) const { return std::isfinite(u) && u > 0.0 && u < u_max(); }

  void require_valid_u(double u) const {
    if (!valid_u(u)) {
      throw Error(ErrorCode::InvalidU,
                  "u = " + std::to_string(u) + " outside (0, " + std::to_string(u_max()) + ")");
    }
  }

  constexpr std::string_view name() const {
    switch (kind_) {
      case Kind::Hyperbolic: return "h2";
      case Kind::Spherical: return "s2";
      case Kind::Euclidean: return "e2";
    }
    return "?";
  }

  static Space parse(std::string_view text) {
    if (text == "h2" || text == "hyperbolic") return hyperbolic();
    if (text == "s2" || text == "spherical") return spherical();
    if (text == "e2" || text == "euclidean") return euclidean();
    throw Error(ErrorCode::InvalidArgument, "unknown space '" + std::string(text) + "'");
  }

  friend constexpr bool operator==(Space a, Space b) { return a.kind_ == b.kind_; }

 private:
  Kind kind_;
};

inline constexpr AmbientVec kPole{0.0, 0.0, 1.0};

inline double metric_dot(Space space, const AmbientVec& a, const AmbientVec& b) {
  return a.x * b.x + a.y * b.y + space.epsilon() * a.z * b.z;
}

/// Psi(u, v) = (w(u) cos v, w(u) sin v, z(u)).
inline AmbientVec embed(Space space, PolarPoint p) {
  space.require_valid_u(p.u);
  const double w = space.warp(p.u);
  return {w * std::cos(p.v), w * std::sin(p.v), space.height(p.u)};
}

inline double distance_to_pole(Space space, PolarPoint p) {
  space.require_valid_u(p.u);
  return p.u;
}

/// Unit tangent of the ray from N through p, i.e. Psi_u.
inline AmbientVec ray_tangent(Space space, PolarPoint p) {
  space.require_valid_u(p.u);
  const double wp = space.warp_prime(p.u);
  return {wp * std::cos(p.v), wp * std::sin(p.v), space.height_prime(p.u)};
}

/// Psi_v / w(u): the unit vector along increasing v.
inline AmbientVec angular_unit(PolarPoint p) { return {-std::sin(p.v), std::cos(p.v), 0.0}; }

/// Distance to N of an ambient point lying on the model surface.
inline double ambient_distance_to_pole(Space space, const AmbientVec& p) {
  const double rho = std::hypot(p.x, p.y);
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: return std::asinh(rho);
    case Space::Kind::Spherical: return std::atan2(rho, p.z);
    case Space::Kind::Euclidean: return rho;
  }
  return rho;
}

inline PolarPoint to_polar(Space space, const AmbientVec& p) {
  return {ambient_distance_to_pole(space, p), std::atan2(p.y, p.x)};
}

/// Intrinsic distance between two points, haversine-style so that short
/// distances keep full relative precision.
inline double geodesic_distance(Space space, PolarPoint p, PolarPoint q) {
  const double half_du = space.warp(0.5 * (p.u - q.u));
  const double s = std::sin(0.5 * (p.v - q.v));
  const double h = half_du * half_du + space.warp(p.u) * space.warp(q.u) * s * s;
  return 2.0 * space.warp_inverse(std::sqrt(std::max(h, 0.0)));
}

/// Point at fraction s of the geodesic from a to b (d = dist(a, b)).
inline AmbientVec geodesic_interpolate(Space space, const AmbientVec& a, const AmbientVec& b,
                                       double d, double s) {
  if (d <= 0.0) return a;
  if (space.is_euclidean()) return (1.0 - s) * a + s * b;
  const double wd = space.warp(d);
  return (space.warp((1.0 - s) * d) / wd) * a + (space.warp(s * d) / wd) * b;
}

/// Intrinsic distance between ambient points on the model surface.
inline double ambient_distance(Space space, const AmbientVec& a, const AmbientVec& b) {
  const AmbientVec diff = a - b;
  const double chord = std::sqrt(std::max(metric_dot(space, diff, diff), 0.0));
  return 2.0 * space.warp_inverse(0.5 * chord);
}

/// Poincare disk image (x, y) / (1 + z) of a hyperboloid point.
inline DiskPoint poincare_project(const AmbientVec& p) {
  if (!(p.z > 0.0)) throw Error(ErrorCode::InvalidArgument, "point is not on the upper hyperboloid sheet");
  return {p.x / (1.0 + p.z), p.y / (1.0 + p.z)};
}

}  // namespace alphastat
