#include "sfvem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sfvem/errors.hpp"

namespace sfvem {
namespace {

EdgeRule compute_gauss_legendre(int n) {
  EdgeRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw Error("Gauss-Legendre Newton iteration did not converge for n = " + std::to_string(n));
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

constexpr int kCached = 64;

const std::vector<EdgeRule>& cached_rules() {
  static const std::vector<EdgeRule> rules = [] {
    std::vector<EdgeRule> r(kCached + 1);
    for (int n = 1; n <= kCached; ++n) r[n] = compute_gauss_legendre(n);
    return r;
  }();
  return rules;
}

}  // namespace

const EdgeRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  if (n <= kCached) return cached_rules()[n];
  thread_local EdgeRule scratch;
  scratch = compute_gauss_legendre(n);
  return scratch;
}

double edge_integral(const Point& a, const Point& b, const std::function<double(const Point&)>& f, int n) {
  const EdgeRule& rule = gauss_legendre(n);
  const Point mid = 0.5 * (a + b);
  const Vec2 half = 0.5 * (b - a);
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) s += rule.weights[q] * f(mid + rule.nodes[q] * half);
  return s * half.norm();
}

void append_triangle_rule(const Point& a, const Point& b, const Point& c, int degree, PolygonRule& rule) {
  // x(u, v) = (1 - u) a + u ((1 - v) b + v c), Jacobian 2|T| u. The
  // integrand has degree `degree` in v and `degree + 1` in u.
  const EdgeRule& gu = gauss_legendre(gauss_nodes_for_degree(degree + 1));
  const EdgeRule& gv = gauss_legendre(gauss_nodes_for_degree(degree));
  const double twice_area = orient(a, b, c);
  for (int i = 0; i < gu.size(); ++i) {
    const double u = 0.5 * (gu.nodes[i] + 1.0);
    const double wu = 0.5 * gu.weights[i];
    for (int j = 0; j < gv.size(); ++j) {
      const double v = 0.5 * (gv.nodes[j] + 1.0);
      const double wv = 0.5 * gv.weights[j];
      rule.points.push_back((1.0 - u) * a + u * ((1.0 - v) * b + v * c));
      rule.weights.push_back(wu * wv * twice_area * u);
    }
  }
}

namespace {

bool point_in_triangle(const Point& p, const Point& a, const Point& b, const Point& c, double tol) {
  return orient(a, b, p) >= -tol && orient(b, c, p) >= -tol && orient(c, a, p) >= -tol;
}

std::vector<std::array<int, 3>> ear_clip(std::span<const Point> poly) {
  const double scale = diameter(poly);
  const double tol = 1e-14 * scale * scale;
  std::vector<int> ring(poly.size());
  for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> tris;
  while (ring.size() > 3) {
    const std::size_t m = ring.size();
    bool clipped = false;
    for (std::size_t k = 0; k < m && !clipped; ++k) {
      const int ip = ring[(k + m - 1) % m], ic = ring[k], in = ring[(k + 1) % m];
      if (orient(poly[ip], poly[ic], poly[in]) <= tol) continue;
      bool empty = true;
      for (std::size_t r = 0; r < m && empty; ++r) {
        const int t = ring[r];
        if (t == ip || t == ic || t == in) continue;
        if (point_in_triangle(poly[t], poly[ip], poly[ic], poly[in], tol)) empty = false;
      }
      if (!empty) continue;
      tris.push_back({ip, ic, in});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
    }
    if (clipped) continue;
    // Only straight (hanging) vertices left to remove: they bound no area.
    for (std::size_t k = 0; k < m && !clipped; ++k) {
      const int ip = ring[(k + m - 1) % m], ic = ring[k], in = ring[(k + 1) % m];
      if (std::abs(orient(poly[ip], poly[ic], poly[in])) <= tol) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
        clipped = true;
      }
    }
    if (!clipped) throw GeometryError("ear clipping failed: polygon is not simple");
  }
  if (orient(poly[ring[0]], poly[ring[1]], poly[ring[2]]) > tol) tris.push_back({ring[0], ring[1], ring[2]});
  return tris;
}

}  // namespace

std::vector<std::array<int, 3>> triangulate(std::span<const Point> polygon, bool& used_fan) {
  const int n = static_cast<int>(polygon.size());
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  const Point c = vertex_average(polygon);
  const double scale = diameter(polygon);
  used_fan = true;
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < n; ++i) {
    if (orient(c, polygon[i], polygon[(i + 1) % n]) <= 1e-12 * scale * scale) {
      used_fan = false;
      break;
    }
    tris.push_back({n, i, (i + 1) % n});
  }
  if (used_fan) return tris;
  return ear_clip(polygon);
}

PolygonRule polygon_rule(std::span<const Point> polygon, int degree) {
  if (degree < 0) throw std::invalid_argument("quadrature degree must be >= 0");
  bool fan = false;
  const auto tris = triangulate(polygon, fan);
  const Point c = vertex_average(polygon);
  const int n = static_cast<int>(polygon.size());
  auto at = [&](int i) -> const Point& { return i == n ? c : polygon[i]; };
  PolygonRule rule;
  rule.degree = degree;
  const int per_tri = gauss_nodes_for_degree(degree + 1) * gauss_nodes_for_degree(degree);
  rule.points.reserve(tris.size() * per_tri);
  rule.weights.reserve(tris.size() * per_tri);
  for (const auto& t : tris) append_triangle_rule(at(t[0]), at(t[1]), at(t[2]), degree, rule);
  return rule;
}

}  // namespace sfvem
