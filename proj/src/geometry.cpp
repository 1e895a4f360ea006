#include "sfvem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sfvem/errors.hpp"

namespace sfvem {

double signed_area(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

Point centroid(std::span<const Point> poly) {
  // Shift to the first vertex to limit cancellation on far-from-origin cells.
  const std::size_t n = poly.size();
  const Point o = poly[0];
  double twice_area = 0.0;
  Point acc = Point::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i] - o;
    const Point b = poly[(i + 1) % n] - o;
    const double cr = a.x() * b.y() - b.x() * a.y();
    twice_area += cr;
    acc += cr * (a + b);
  }
  if (twice_area == 0.0) throw GeometryError("centroid of a zero-area polygon");
  return o + acc / (3.0 * twice_area);
}

Point vertex_average(std::span<const Point> poly) {
  Point s = Point::Zero();
  for (const auto& p : poly) s += p;
  return s / static_cast<double>(poly.size());
}

double diameter(std::span<const Point> poly) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) d2 = std::max(d2, (poly[i] - poly[j]).squaredNorm());
  return std::sqrt(d2);
}

double perimeter(std::span<const Point> poly) {
  double p = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) p += (poly[(i + 1) % poly.size()] - poly[i]).norm();
  return p;
}

double min_edge_length(std::span<const Point> poly) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) m = std::min(m, (poly[(i + 1) % poly.size()] - poly[i]).norm());
  return m;
}

namespace {

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
         p.y() <= std::max(a.y(), b.y());
}

int sign(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

bool segments_touch(const Point& p1, const Point& p2, const Point& q1, const Point& q2, double tol) {
  const int d1 = sign(orient(q1, q2, p1), tol);
  const int d2 = sign(orient(q1, q2, p2), tol);
  const int d3 = sign(orient(p1, p2, q1), tol);
  const int d4 = sign(orient(p1, p2, q2), tol);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

bool is_simple(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  const double scale = diameter(poly);
  if (scale == 0.0) return false;
  const double tol = 1e-14 * scale * scale;
  for (std::size_t i = 0; i < n; ++i)
    if ((poly[(i + 1) % n] - poly[i]).norm() <= 1e-15 * scale) return false;

  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    // Adjacent edge: only a fold-back (anti-parallel overlap) is a defect.
    const Point& c = poly[(i + 2) % n];
    if (std::abs(orient(a, b, c)) <= tol && (b - a).dot(c - b) < 0.0) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_touch(a, b, poly[j], poly[(j + 1) % n], tol)) return false;
    }
  }
  return true;
}

ElementGeometry ElementGeometry::from_vertices(std::vector<Point> vertices) {
  ElementGeometry g;
  g.vertices = std::move(vertices);
  g.area = signed_area(g.vertices);
  g.diameter = sfvem::diameter(g.vertices);
  g.perimeter = sfvem::perimeter(g.vertices);
  if (g.vertices.size() < 3 || g.area <= 1e-14 * g.diameter * g.diameter)
    throw GeometryError("degenerate element: area " + std::to_string(g.area));
  g.centroid = sfvem::centroid(g.vertices);
  return g;
}

}  // namespace sfvem
