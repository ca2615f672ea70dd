#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "alphastat/curves.hpp"

using namespace alphastat;

namespace {

constexpr double kPi = std::numbers::pi;
const Space kH = Space::hyperbolic();
const Space kS = Space::spherical();
const Space kE = Space::euclidean();

AmbientVec point_of(Space s, double u, double v) {
  if (s.is_euclidean()) return {u * std::cos(v), u * std::sin(v), 0.0};
  return embed(s, {u, v});
}

// Geodesic curvature from ambient finite differences, with the normal
// n = J (T x p) built from the ambient cross product.
double ambient_curvature_oracle(Space s, double (*u)(double), double (*v)(double), double t) {
  const double h = 1e-4;
  auto P = [&](double x) { return point_of(s, u(x), v(x)); };
  const AmbientVec p = P(t);
  const AmbientVec d1 = (1.0 / (2 * h)) * (P(t + h) - P(t - h));
  const AmbientVec d2 = (1.0 / (h * h)) * (P(t + h) - 2.0 * p + P(t - h));
  const double sp = std::sqrt(metric_dot(s, d1, d1));
  const AmbientVec T = (1.0 / sp) * d1;
  AmbientVec n;
  if (s.is_euclidean()) {
    n = {T.y, -T.x, 0.0};
  } else {
    const AmbientVec c = cross(T, p);
    n = {c.x, c.y, s.epsilon() * c.z};
  }
  return metric_dot(s, d2, n) / (sp * sp);
}

double wiggle_u(double t) { return 1.0 + 0.3 * std::sin(t); }
double wiggle_v(double t) { return t + 0.2 * std::cos(2 * t); }

CurveState wiggle_state(double t) {
  return {wiggle_u(t), wiggle_v(t), 0.3 * std::cos(t), 1 - 0.4 * std::sin(2 * t), -0.3 * std::sin(t),
          -0.8 * std::cos(2 * t)};
}

}  // namespace

TEST(Curvature, PoleCentredCircles) {
  for (double r : {0.3, 1.0, 2.5}) {
    const CurveState ccw{r, 0.0, 0.0, 1.0, 0.0, 0.0};
    const CurveState cw{r, 0.0, 0.0, -1.0, 0.0, 0.0};
    EXPECT_NEAR(curvature(kH, ccw), -1.0 / std::tanh(r), 1e-12);
    EXPECT_NEAR(curvature(kH, cw), 1.0 / std::tanh(r), 1e-12);
    EXPECT_NEAR(curvature(kS, cw), 1.0 / std::tan(r), 1e-12);
    EXPECT_NEAR(curvature(kE, cw), 1.0 / r, 1e-12);
    EXPECT_NEAR(metric_dot(kH, unit_normal(kH, ccw), ray_tangent(kH, ccw.point())), 1.0, 1e-12);
  }
}

TEST(Curvature, RaysAreGeodesics) {
  for (Space s : {kH, kS}) {
    const CurveState ray{0.7, 0.2, 1.0, 0.0, 0.0, 0.0};
    EXPECT_NEAR(curvature(s, ray), 0.0, 1e-15);
    EXPECT_NEAR(metric_dot(s, unit_normal(s, ray), ray_tangent(s, ray.point())), 0.0, 1e-15);
  }
}

TEST(Curvature, MatchesAmbientOracle) {
  for (Space s : {kH, kS, kE}) {
    for (double t = 0.0; t < 6.0; t += 0.37) {
      EXPECT_NEAR(curvature(s, wiggle_state(t)), ambient_curvature_oracle(s, wiggle_u, wiggle_v, t), 1e-6)
          << s.name() << " t=" << t;
    }
  }
}

TEST(Curvature, InvariantUnderReparametrization) {
  // Doubling the speed leaves kappa unchanged.
  for (Space s : {kH, kS}) {
    const CurveState a = wiggle_state(0.8);
    CurveState b = a;
    b.du *= 2;
    b.dv *= 2;
    b.ddu *= 4;
    b.ddv *= 4;
    EXPECT_NEAR(curvature(s, a), curvature(s, b), 1e-12);
  }
}

TEST(Curvature, ReversalFlipsSign) {
  const CurveState a = wiggle_state(1.7);
  CurveState b = a;
  b.du = -a.du;
  b.dv = -a.dv;
  for (Space s : {kH, kS, kE}) EXPECT_NEAR(curvature(s, a), -curvature(s, b), 1e-12);
}

TEST(Curvature, UnitNormalIsUnitAndOrthogonal) {
  for (Space s : {kH, kS}) {
    for (double t = 0.0; t < 6.0; t += 0.5) {
      const CurveState st = wiggle_state(t);
      const AmbientVec n = unit_normal(s, st);
      EXPECT_NEAR(metric_dot(s, n, n), 1.0, 1e-12);
      EXPECT_NEAR(metric_dot(s, n, ambient_velocity(s, st)), 0.0, 1e-12);
      EXPECT_NEAR(metric_dot(s, n, embed(s, st.point())), 0.0, 1e-12);
    }
  }
}

TEST(Curvature, DegenerateStateThrows) {
  try {
    curvature(kH, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateState);
  }
}

TEST(WeightedCurvature, VanishesOnStationaryCircle) {
  for (double r : {0.5, 1.0, 2.0}) {
    const CurveState cw{r, 0.0, 0.0, -1.0 / std::sinh(r), 0.0, 0.0};
    EXPECT_NEAR(weighted_curvature(kH, -r / std::tanh(r), cw), 0.0, 1e-12);
    EXPECT_GT(std::abs(weighted_curvature(kH, 1.0, cw)), 0.1);
  }
}

TEST(Sigma, UnitSpeedOnly) {
  const double r = 0.8;
  EXPECT_NEAR(sigma_of_state(kH, {r, 0, 0, 1 / std::sinh(r), 0, 0}), kPi / 2, 1e-14);
  EXPECT_NEAR(sigma_of_state(kH, {r, 0, -1, 0, 0, 0}), kPi, 1e-14);
  try {
    sigma_of_state(kH, {r, 0, 2, 0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitSpeed);
  }
}

TEST(Samples, ValidateErrors) {
  CurveSamples c;
  c.t = {0.0};
  c.u = {1.0};
  c.v = {0.0};
  try {
    c.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewSamples);
  }
  c.t = {0, 1, 2};
  c.u = {1, 0, 1};
  c.v = {0, 0, 0};
  try {
    c.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleTouching);
  }
  c.u = {1, 1, 1};
  c.t = {0, 1, 1};
  EXPECT_THROW(c.validate(), Error);
}

TEST(Samples, FiniteDifferenceCurvatureOfSampledCircle) {
  CurveSamples c;
  c.space = kH;
  const double r = 1.2;
  for (int i = 0; i <= 400; ++i) {
    const double t = 0.01 * i;
    c.t.push_back(t);
    c.u.push_back(r);
    c.v.push_back(-t / std::sinh(r));
  }
  for (const auto& s : states_from_samples(c)) EXPECT_NEAR(curvature(kH, s), 1 / std::tanh(r), 1e-9);
}

TEST(Resample, UniformArcLengthPreservesLength) {
  std::mt19937_64 rng(9);
  for (Space s : {kH, kS, kE}) {
    CurveSamples c;
    c.space = s;
    double t = 0.0;
    for (int i = 0; i < 300; ++i) {
      t += std::uniform_real_distribution<double>(0.001, 0.02)(rng);
      c.t.push_back(t);
      c.u.push_back(1.0 + 0.2 * std::sin(t));
      c.v.push_back(t);
    }
    const double before = cumulative_length(c).back();
    const CurveSamples r = resample_arclength(c, 500);
    EXPECT_TRUE(r.arclength);
    EXPECT_TRUE(uniform_parameter(r));
    EXPECT_NEAR(r.length(), before, 1e-12);
    CurveSamples plain = r;
    plain.arclength = false;
    EXPECT_NEAR(cumulative_length(plain).back(), before, 1e-4);
    EXPECT_DOUBLE_EQ(r.u.front(), c.u.front());
    EXPECT_DOUBLE_EQ(r.u.back(), c.u.back());
  }
}
