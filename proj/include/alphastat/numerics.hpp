#pragma once

// Small numerical kernels shared by the modules: bracketing root finder,
// Gauss-Kronrod adaptive quadrature, composite Simpson, Fornberg finite
// difference weights.

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "alphastat/error.hpp"

namespace alphastat::numerics {

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign (zero allowed).
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol = 0.0, int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorCode::InvalidRange, "bisection bracket does not change sign");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= abs_tol) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1, 1] (positive half) with Kronrod and Gauss weights.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144845693013,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
// Gauss weights live on the odd Kronrod nodes (index 0, 2, 4, 6).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

template <class F>
QuadResult gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[0] * fc;
  double gauss = kGaussWeights[0] * fc;
  for (std::size_t i = 1; i < kKronrodNodes.size(); ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 0) gauss += kGaussWeights[i / 2] * pair;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct Panel {
  double a, b;
  QuadResult r;
  bool operator<(const Panel& o) const { return r.error < o.r.error; }
};

// Global adaptive bisection: always split the panel with the largest error
// estimate, within a fixed panel budget.
template <class F>
QuadResult adaptive(F& f, double a, double b, double abs_tol, double rel_tol, int max_panels) {
  std::priority_queue<Panel> heap;
  QuadResult total = gk15(f, a, b);
  heap.push({a, b, total});
  for (int n = 1; n < max_panels; ++n) {
    if (total.error <= std::max(abs_tol, rel_tol * std::abs(total.value))) break;
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;
    heap.pop();
    const QuadResult l = gk15(f, worst.a, mid);
    const QuadResult r = gk15(f, mid, worst.b);
    total.value += l.value + r.value - worst.r.value;
    total.error += l.error + r.error - worst.r.error;
    heap.push({worst.a, mid, l});
    heap.push({mid, worst.b, r});
  }
  // Re-sum to shed the drift of the running update.
  total = {};
  while (!heap.empty()) {
    total.value += heap.top().r.value;
    total.error += heap.top().r.error;
    heap.pop();
  }
  return total;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7-15) quadrature of a smooth integrand.
template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol = 1e-13, double rel_tol = 1e-13,
                     int max_panels = 2000) {
  if (a == b) return {};
  return detail::adaptive(f, a, b, abs_tol, rel_tol, max_panels);
}

/// Quadrature of an integrand that may carry 1/sqrt singularities at either
/// endpoint. Each half is mapped through s = a + tau^2 (resp. s = b - tau^2),
/// which turns such singularities into bounded integrands.
template <class F>
QuadResult integrate_sqrt_endpoints(F&& f, double a, double b, double abs_tol = 1e-13,
                                    double rel_tol = 1e-13) {
  if (a == b) return {};
  const double mid = 0.5 * (a + b);
  const double span = std::sqrt(mid - a);
  auto left = [&](double tau) { return 2.0 * tau * f(a + tau * tau); };
  auto right = [&](double tau) { return 2.0 * tau * f(b - tau * tau); };
  const QuadResult l = integrate(left, 0.0, span, 0.5 * abs_tol, rel_tol);
  const QuadResult r = integrate(right, 0.0, span, 0.5 * abs_tol, rel_tol);
  return {l.value + r.value, l.error + r.error};
}

/// Composite Simpson on uniform samples. An odd number of panels closes with
/// the 3/8 rule on the last three; fewer than four samples fall back to the
/// trapezoid rule.
inline double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n < 4) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) s += 0.5 * (y[i] + y[i + 1]);
    return s * h;
  }
  const std::size_t panels = n - 1;
  const std::size_t simpson_panels = panels % 2 == 0 ? panels : panels - 3;
  double s = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_panels; i += 2) {
    s += y[i] + 4.0 * y[i + 1] + y[i + 2];
  }
  s *= h / 3.0;
  if (simpson_panels != panels) {
    const std::size_t k = simpson_panels;
    s += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
  }
  return s;
}

inline double trapezoid(std::span<const double> y, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) s += 0.5 * (y[i] + y[i + 1]);
  return s * h;
}

/// Fornberg's algorithm: weights c[m][j] for the m-th derivative at x0 from
/// the stencil nodes x[j], for m = 0..max_order.
inline std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> x,
                                                         int max_order) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// First and second derivatives of sampled data at every node. Uses the five
/// nearest samples (centred where possible, fourth order) and smaller stencils
/// only when fewer samples exist.
inline std::pair<std::vector<double>, std::vector<double>> differentiate(std::span<const double> t,
                                                                         std::span<const double> y) {
  const std::size_t n = t.size();
  std::vector<double> d1(n, 0.0), d2(n, 0.0);
  if (n < 2) return {d1, d2};
  const std::size_t width = std::min<std::size_t>(5, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t start = i >= width / 2 ? i - width / 2 : 0;
    if (start + width > n) start = n - width;
    const auto nodes = t.subspan(start, width);
    const auto w = fornberg_weights(t[i], nodes, 2);
    double a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
      a += w[1][j] * y[start + j];
      b += w[2][j] * y[start + j];
    }
    d1[i] = a;
    d2[i] = b;
  }
  return {d1, d2};
}

/// Gauss-Legendre nodes/weights on [0, 1] (8 points).
inline constexpr std::array<std::pair<double, double>, 8> kGaussLegendre8 = {{
    {0.019855071751231884, 0.050614268145188129},
    {0.101666761293186630, 0.111190517226687235},
    {0.237233795041835507, 0.156853322938943644},
    {0.408282678752175098, 0.181341891689180991},
    {0.591717321247824902, 0.181341891689180991},
    {0.762766204958164493, 0.156853322938943644},
    {0.898333238706813370, 0.111190517226687235},
    {0.980144928248768116, 0.050614268145188129},
}};

}  // namespace alphastat::numerics
