#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "sfvem/geometry.hpp"

namespace sfvem {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct EdgeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Roots of P_n by Newton iteration from Chebyshev guesses. Exact for
/// polynomials of degree <= 2n - 1. Rules up to n = 64 are cached.
const EdgeRule& gauss_legendre(int n);

/// Nodes needed to integrate a degree-p polynomial exactly on a segment.
constexpr int gauss_nodes_for_degree(int p) { return p < 0 ? 1 : (p + 2) / 2; }

/// Mapped Gauss-Legendre approximation of the line integral over a -> b.
double edge_integral(const Point& a, const Point& b, const std::function<double(const Point&)>& f, int n);

struct PolygonRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t q = 0; q < points.size(); ++q) s += weights[q] * f(points[q]);
    return s;
  }
};

/// Collapsed tensor Gauss rule on triangle (a, b, c), exact to total degree `degree`.
void append_triangle_rule(const Point& a, const Point& b, const Point& c, int degree, PolygonRule& rule);

/// Triangulation of a simple CCW polygon into vertex-index triples. Uses a fan
/// from the vertex average when every fan triangle is positively oriented,
/// ear clipping otherwise. Fan triangles use index n for the vertex average.
std::vector<std::array<int, 3>> triangulate(std::span<const Point> polygon, bool& used_fan);

/// Quadrature rule over a simple CCW polygon exact for total degree `degree`.
PolygonRule polygon_rule(std::span<const Point> polygon, int degree);

}  // namespace sfvem
