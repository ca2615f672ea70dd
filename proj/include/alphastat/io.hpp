#pragma once

// Curve CSV (t,u,v,sigma,el_residual,c_drift) and SVG figures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alphastat/curves.hpp"
#include "alphastat/error.hpp"
#include "alphastat/geometry.hpp"

namespace alphastat::io {

inline constexpr const char* kCsvHeader = "t,u,v,sigma,el_residual,c_drift";

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_csv(std::ostream& os, const CurveSamples& c) {
  os << kCsvHeader << '\n';
  const double nan = std::nan("");
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double sigma = c.sigma ? (*c.sigma)[i] : nan;
    const double res = i < c.el_residual.size() ? c.el_residual[i] : nan;
    const double drift = i < c.c_drift.size() ? c.c_drift[i] : nan;
    os << format_double(c.t[i]) << ',' << format_double(c.u[i]) << ',' << format_double(c.v[i]) << ','
       << format_double(sigma) << ',' << format_double(res) << ',' << format_double(drift) << '\n';
  }
}

inline std::string to_csv(const CurveSamples& c) {
  std::ostringstream os;
  write_csv(os, c);
  return os.str();
}

namespace detail {
inline double parse_field(const std::string& s, std::size_t line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) {
    throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return x;
}
}  // namespace detail

/// Reads a curve CSV. Columns holding only NaN are treated as absent.
/// `arclength` is left false; callers decide how to treat the parameter.
inline CurveSamples read_csv(std::istream& is, Space space) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::MalformedInput, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw Error(ErrorCode::MalformedInput, "expected header '" + std::string(kCsvHeader) + "'");
  CurveSamples c;
  c.space = space;
  std::vector<double> sigma, res, drift;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 6) {
      throw Error(ErrorCode::MalformedInput, "line " + std::to_string(lineno) + ": expected 6 fields");
    }
    c.t.push_back(detail::parse_field(fields[0], lineno));
    c.u.push_back(detail::parse_field(fields[1], lineno));
    c.v.push_back(detail::parse_field(fields[2], lineno));
    sigma.push_back(detail::parse_field(fields[3], lineno));
    res.push_back(detail::parse_field(fields[4], lineno));
    drift.push_back(detail::parse_field(fields[5], lineno));
  }
  auto present = [](const std::vector<double>& xs) {
    for (double x : xs) {
      if (!std::isnan(x)) return true;
    }
    return false;
  };
  if (present(sigma)) c.sigma = std::move(sigma);
  if (present(res)) c.el_residual = std::move(res);
  if (present(drift)) c.c_drift = std::move(drift);
  return c;
}

inline CurveSamples read_csv_file(const std::string& path, Space space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
  return read_csv(in, space);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------
// SVG

struct SvgStyle {
  int size = 600;
  double margin = 30.0;
  std::string stroke = "#1f4e9c";
  double stroke_width = 1.5;
};

namespace detail {

struct PlanePoint {
  double x, y;
  bool hidden;  // lower hemisphere of S2
};

inline PlanePoint project(Space space, PolarPoint p) {
  switch (space.kind()) {
    case Space::Kind::Hyperbolic: {
      const DiskPoint d = poincare_project(embed(space, p));
      return {d.x, d.y, false};
    }
    case Space::Kind::Spherical: {
      const AmbientVec q = embed(space, p);
      return {q.x, q.y, q.z < 0.0};
    }
    case Space::Kind::Euclidean: return {p.u * std::cos(p.v), p.u * std::sin(p.v), false};
  }
  return {0, 0, false};
}

}  // namespace detail

/// SVG 1.1 figure of one or more curves: the Poincare disk for H2, the
/// orthographic view from above N for S2 (lower hemisphere dashed), the
/// plane for E2.
inline std::string svg_figure(Space space, const std::vector<CurveSamples>& curves, const std::string& title = "",
                              const SvgStyle& style = {}) {
  std::vector<std::vector<detail::PlanePoint>> projected;
  double extent = 1.0;
  for (const CurveSamples& c : curves) {
    auto& pts = projected.emplace_back();
    for (std::size_t i = 0; i < c.size(); ++i) {
      pts.push_back(detail::project(space, c.point(i)));
      if (space.is_euclidean()) extent = std::max(extent, std::hypot(pts.back().x, pts.back().y));
    }
  }
  const double half = 0.5 * style.size;
  const double scale = (half - style.margin) / extent;
  auto X = [&](double x) { return format_double(std::round((half + scale * x) * 1000.0) / 1000.0); };
  auto Y = [&](double y) { return format_double(std::round((half - scale * y) * 1000.0) / 1000.0); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.size << "\" height=\""
     << style.size << "\" viewBox=\"0 0 " << style.size << ' ' << style.size << "\">\n";
  if (!title.empty()) os << "  <title>" << title << "</title>\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!space.is_euclidean()) {
    os << "  <circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"" << format_double(scale)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  os << "  <circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"2.5\" fill=\"black\"/>\n";

  for (const auto& pts : projected) {
    // Split into runs of equal visibility so the hidden part can be dashed.
    std::size_t i = 0;
    while (i < pts.size()) {
      std::size_t j = i;
      while (j + 1 < pts.size() && pts[j + 1].hidden == pts[i].hidden) ++j;
      const std::size_t end = std::min(j + 1, pts.size() - 1);
      os << "  <polyline fill=\"none\" stroke=\"" << style.stroke << "\" stroke-width=\"" << style.stroke_width << '"';
      if (pts[i].hidden) os << " stroke-dasharray=\"4 3\"";
      os << " points=\"";
      for (std::size_t k = i; k <= end; ++k) os << (k == i ? "" : " ") << X(pts[k].x) << ',' << Y(pts[k].y);
      os << "\"/>\n";
      i = j + 1;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace alphastat::io
