#include "sfvem/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sfvem/rng.hpp"

namespace sfvem {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Point polar(double r, double angle) { return Point(r * std::cos(angle), r * std::sin(angle)); }

std::vector<Point> star(int n) {
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) v.push_back(polar(k % 2 == 0 ? 1.0 : 0.45, kTwoPi * k / n));
  return v;
}

std::vector<Point> concave(int n) {
  // The chord between the neighbours of vertex 0 sits at radius cos(2 pi / n);
  // moving the vertex 0.35 inside it makes the corner reflex.
  auto v = regular_polygon(n);
  v[0] *= std::cos(kTwoPi / n) - 0.35;
  return v;
}

std::vector<Point> irregular(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> v;
  const double step = kTwoPi / n;
  for (int k = 0; k < n; ++k) {
    const double r = rng.uniform(0.75, 1.15);
    const double a = step * (k + rng.uniform(-0.3, 0.3));
    v.push_back(polar(r, a));
  }
  return v;
}

// Irregular base with `splits` midpoints inserted on edges 0, 2, 4, ...
std::vector<Point> hanging_nodes(int n, std::uint64_t seed) {
  const int splits = n / 3;
  const int base_n = n - splits;
  const auto base = irregular(base_n, seed);
  std::vector<Point> v;
  for (int k = 0; k < base_n; ++k) {
    v.push_back(base[k]);
    if (k % 2 == 0 && k / 2 < splits) v.push_back(0.5 * (base[k] + base[(k + 1) % base_n]));
  }
  return v;
}

std::vector<Point> collapsing_edge(int n, std::uint64_t seed) {
  auto v = irregular(n, seed);
  const double target = 0.9e-3 * diameter(v);
  const Vec2 dir = (v[1] - v[0]).normalized();
  v[1] = v[0] + target * dir;
  return v;
}

}  // namespace

std::vector<Point> regular_polygon(int n, double radius) {
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) v.push_back(polar(radius, kTwoPi * k / n));
  return v;
}

std::vector<CatalogPolygon> catalog_polygons() {
  std::vector<CatalogPolygon> out;
  for (int n = 3; n <= 20; ++n) {
    const auto seed = static_cast<std::uint64_t>(1000 + n);
    switch (n) {
      case 5: case 7: case 10: case 15: case 19:
        out.push_back({"regular", regular_polygon(n)});
        break;
      case 8: case 12: case 20:
        out.push_back({"star", star(n)});
        break;
      case 4: case 11: case 17:
        out.push_back({"concave", concave(n)});
        break;
      case 6: case 9: case 13: case 16:
        out.push_back({"hanging-nodes", hanging_nodes(n, seed)});
        break;
      case 18:
        out.push_back({"collapsing-edge", collapsing_edge(n, seed)});
        break;
      default:
        out.push_back({"irregular", irregular(n, seed)});
    }
  }
  return out;
}

}  // namespace sfvem
