#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "alphastat/curves.hpp"
#include "alphastat/error.hpp"
#include "alphastat/geometry.hpp"
#include "alphastat/numerics.hpp"

namespace alphastat {

struct EnergyReport {
  double value = 0.0;
  double length = 0.0;
  double quadrature_error_estimate = 0.0;
};

namespace detail {

// Simpson on the full grid, compared with Simpson on every other sample.
inline std::pair<double, double> simpson_with_estimate(std::span<const double> y, double h) {
  const double fine = numerics::simpson(y, h);
  const std::size_t panels = y.size() - 1;
  if (panels >= 4 && panels % 2 == 0) {
    std::vector<double> coarse;
    coarse.reserve(panels / 2 + 1);
    for (std::size_t i = 0; i < y.size(); i += 2) coarse.push_back(y[i]);
    return {fine, std::abs(fine - numerics::simpson(coarse, 2.0 * h)) / 15.0};
  }
  return {fine, std::abs(fine - numerics::trapezoid(y, h))};
}

}  // namespace detail

/// E_alpha = int u^alpha sqrt(u'^2 + w(u)^2 v'^2) dt over the sampled curve.
inline EnergyReport energy(Space space, double alpha, const CurveSamples& curve) {
  if (!(curve.space == space)) throw Error(ErrorCode::InvalidArgument, "curve space mismatch");
  for (double u : curve.u) {
    if (!space.valid_u(u)) {
      throw Error(ErrorCode::PoleTouching, "curve reaches the pole or antipode (u = " + std::to_string(u) + ")");
    }
  }
  curve.validate();

  const CurveSamples* c = &curve;
  CurveSamples resampled;
  if (!uniform_parameter(curve)) {
    // Arc-length resampling; doubling the count keeps interpolation error small.
    resampled = resample_arclength(curve, 2 * (curve.size() - 1) + 1);
    c = &resampled;
  }
  const std::size_t n = c->size();
  const double h = (c->t.back() - c->t.front()) / static_cast<double>(n - 1);

  std::vector<double> integrand(n), speed_samples(n, 1.0);
  if (c->arclength) {
    for (std::size_t i = 0; i < n; ++i) integrand[i] = std::pow(c->u[i], alpha);
  } else {
    const auto states = states_from_samples(*c);
    for (std::size_t i = 0; i < n; ++i) {
      speed_samples[i] = speed(space, states[i]);
      integrand[i] = std::pow(c->u[i], alpha) * speed_samples[i];
    }
  }

  const auto [value, err] = detail::simpson_with_estimate(integrand, h);
  const double length = c->arclength ? c->t.back() - c->t.front() : numerics::simpson(speed_samples, h);
  return {value, length, err};
}

/// Energy of the radial segment from u = a1 to u = a2: int_{a1}^{a2} t^alpha dt.
inline double energy_ray_segment(double alpha, double a1, double a2) {
  if (!(a1 > 0.0 && a2 > a1)) throw Error(ErrorCode::InvalidRange, "need 0 < a1 < a2");
  if (alpha == -1.0) return std::log(a2 / a1);
  const double beta = alpha + 1.0;
  // a1^beta * (exp(beta log(a2/a1)) - 1) / beta stays accurate near alpha = -1.
  return std::pow(a1, beta) * std::expm1(beta * std::log(a2 / a1)) / beta;
}

/// Energy of the sphere geodesic from Psi(a, v0) through the south pole to
/// Psi(b, v0 + pi): (2 pi^{alpha+1} - a^{alpha+1} - b^{alpha+1}) / (alpha + 1).
inline double energy_south_pole_geodesic(double alpha, double a, double b) {
  constexpr double pi = std::numbers::pi;
  if (!(alpha > 0.0)) throw Error(ErrorCode::ConstraintViolated, "the formula assumes alpha > 0");
  if (!(a > 0.0 && a <= pi && b > 0.0 && b <= pi)) {
    throw Error(ErrorCode::ConstraintViolated, "a and b must lie in (0, pi]");
  }
  if (a + b < pi - 1e-12) {
    throw Error(ErrorCode::ConstraintViolated, "a + b < pi: the minimizing geodesic does not pass the south pole");
  }
  const double beta = alpha + 1.0;
  return (2.0 * std::pow(pi, beta) - std::pow(a, beta) - std::pow(b, beta)) / beta;
}

}  // namespace alphastat
