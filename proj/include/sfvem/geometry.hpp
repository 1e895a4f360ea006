#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace sfvem {

using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;

/// Shoelace signed area; positive for counter-clockwise loops.
double signed_area(std::span<const Point> poly);

/// Area centroid of a simple polygon with non-zero area.
Point centroid(std::span<const Point> poly);

Point vertex_average(std::span<const Point> poly);

/// Largest pairwise vertex distance.
double diameter(std::span<const Point> poly);

double perimeter(std::span<const Point> poly);

double min_edge_length(std::span<const Point> poly);

/// True when no two non-adjacent edges touch and adjacent edges only share
/// their common endpoint. Collinear consecutive edges (hanging nodes) are
/// allowed as long as they do not fold back.
bool is_simple(std::span<const Point> poly);

/// Outward unit normal of the edge a->b of a counter-clockwise polygon.
inline Vec2 outward_normal(const Point& a, const Point& b) {
  const Vec2 t = b - a;
  return Vec2(t.y(), -t.x()) / t.norm();
}

/// Cross product z-component of (b - a) x (c - a).
inline double orient(const Point& a, const Point& b, const Point& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

/// Intrinsic shape data shared by every element computation.
struct ElementGeometry {
  std::vector<Point> vertices;
  double area = 0.0;
  Point centroid = Point::Zero();
  double diameter = 0.0;
  double perimeter = 0.0;

  static ElementGeometry from_vertices(std::vector<Point> vertices);
  int size() const { return static_cast<int>(vertices.size()); }
};

}  // namespace sfvem
