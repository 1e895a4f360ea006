#include "sfvem/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "sfvem/errors.hpp"
#include "sfvem/rng.hpp"

namespace sfvem {
namespace {

bool valid_cell(std::span<const Point> pts) { return signed_area(pts) > 0.0 && is_simple(pts); }

std::vector<Point> gather(const std::vector<Point>& xy, std::span<const int> cell) {
  std::vector<Point> pts;
  pts.reserve(cell.size());
  for (int v : cell) pts.push_back(xy[v]);
  return pts;
}

}  // namespace

PolyMesh generate_distorted_grid(int n, double delta, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("grid needs n >= 1");
  if (!(delta >= 0.0 && delta < 0.5)) throw std::invalid_argument("grid distortion must lie in [0, 0.5)");

  const int np = n + 1;
  auto id = [np](int i, int j) { return j * np + i; };
  std::vector<Point> xy(static_cast<std::size_t>(np) * np);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) xy[id(i, j)] = Point(static_cast<double>(i) / n, static_cast<double>(j) / n);
  std::vector<std::vector<int>> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});

  if (delta > 0.0) {
    Rng rng(seed);
    const double amp = delta / n;
    auto cell_of = [n](int i, int j) { return j * n + i; };
    for (int j = 1; j < n; ++j) {
      for (int i = 1; i < n; ++i) {
        const Point base = xy[id(i, j)];
        const int around[4] = {cell_of(i - 1, j - 1), cell_of(i, j - 1), cell_of(i, j), cell_of(i - 1, j)};
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
          const double dx = rng.uniform(-amp, amp);
          const double dy = rng.uniform(-amp, amp);
          xy[id(i, j)] = base + Point(dx, dy);
          ok = std::all_of(std::begin(around), std::end(around),
                           [&](int c) { return valid_cell(gather(xy, cells[c])); });
        }
        if (!ok) throw GeometryError("distorted grid: could not place vertex without inverting a cell");
      }
    }
  }
  return PolyMesh::from_cells(std::move(xy), std::move(cells));
}

namespace {

// Keeps the part of a convex CCW polygon closer to p than to q.
std::vector<Point> clip_bisector(const std::vector<Point>& poly, const Point& p, const Point& q) {
  const Vec2 nrm = q - p;
  const double offset = 0.5 * (q.squaredNorm() - p.squaredNorm());
  std::vector<Point> out;
  out.reserve(poly.size() + 1);
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& s = poly[k];
    const Point& e = poly[(k + 1) % n];
    const double ds = nrm.dot(s) - offset;
    const double de = nrm.dot(e) - offset;
    const bool s_in = ds <= 0.0;
    const bool e_in = de <= 0.0;
    if (s_in != e_in) {
      const double t = ds / (ds - de);
      out.push_back(s + t * (e - s));
    }
    if (e_in) out.push_back(e);
  }
  return out;
}

std::vector<std::vector<Point>> voronoi_cells(std::span<const Point> seeds) {
  const std::vector<Point> square = {Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)};
  const std::size_t n = seeds.size();
  std::vector<std::vector<Point>> cells(n);
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) order[j] = {(seeds[j] - seeds[i]).squaredNorm(), j};
    std::sort(order.begin(), order.end());
    std::vector<Point> cell = square;
    for (const auto& [d2, j] : order) {
      if (j == i) continue;
      double reach2 = 0.0;
      for (const auto& v : cell) reach2 = std::max(reach2, (v - seeds[i]).squaredNorm());
      // Bisector of a seed farther than twice the cell radius cannot cut it.
      if (d2 > 4.0 * reach2) break;
      cell = clip_bisector(cell, seeds[i], seeds[j]);
      if (cell.size() < 3) break;
    }
    cells[i] = std::move(cell);
  }
  return cells;
}

// Merges coincident points across cells into shared vertices.
PolyMesh weld(const std::vector<std::vector<Point>>& polys) {
  constexpr double tol = 1e-10;
  std::vector<Point> verts;
  std::unordered_map<long long, std::vector<int>> buckets;
  auto bucket_key = [](long long bx, long long by) { return bx * 4000000007LL + by; };
  auto find_or_add = [&](const Point& p) {
    const long long bx = static_cast<long long>(std::floor(p.x() / tol));
    const long long by = static_cast<long long>(std::floor(p.y() / tol));
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(bucket_key(bx + dx, by + dy));
        if (it == buckets.end()) continue;
        for (int v : it->second)
          if ((verts[v] - p).norm() <= tol) return v;
      }
    verts.push_back(p);
    const int v = static_cast<int>(verts.size()) - 1;
    buckets[bucket_key(bx, by)].push_back(v);
    return v;
  };

  std::vector<std::vector<int>> cells;
  cells.reserve(polys.size());
  for (const auto& poly : polys) {
    std::vector<int> cell;
    for (const auto& p : poly) {
      const int v = find_or_add(p);
      if (cell.empty() || cell.back() != v) cell.push_back(v);
    }
    while (cell.size() > 1 && cell.front() == cell.back()) cell.pop_back();
    if (cell.size() < 3) throw GeometryError("voronoi: degenerate cell after welding");
    cells.push_back(std::move(cell));
  }
  return PolyMesh::from_cells(std::move(verts), std::move(cells));
}

void separate_duplicates(std::vector<Point>& seeds, Rng& rng) {
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      while ((seeds[i] - seeds[j]).norm() < 1e-9) {
        seeds[i] += Point(rng.uniform(-1e-6, 1e-6), rng.uniform(-1e-6, 1e-6));
        seeds[i] = seeds[i].cwiseMax(0.0).cwiseMin(1.0);
      }
}

}  // namespace

PolyMesh voronoi_from_seeds(std::span<const Point> seeds) {
  if (seeds.empty()) throw std::invalid_argument("voronoi needs at least one seed");
  return weld(voronoi_cells(seeds));
}

PolyMesh generate_voronoi(int n_seeds, int lloyd_iters, std::uint64_t seed, double distortion) {
  if (n_seeds < 1) throw std::invalid_argument("voronoi needs at least one seed");
  if (lloyd_iters < 0) throw std::invalid_argument("negative lloyd iteration count");
  if (!(distortion >= 0.0 && distortion < 0.5)) throw std::invalid_argument("voronoi distortion must lie in [0, 0.5)");

  Rng rng(seed);
  std::vector<Point> seeds(n_seeds);
  for (auto& s : seeds) {
    const double x = rng.uniform();
    s = Point(x, rng.uniform());
  }
  separate_duplicates(seeds, rng);
  for (int it = 0; it < lloyd_iters; ++it) {
    const auto cells = voronoi_cells(seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = centroid(cells[i]);
    separate_duplicates(seeds, rng);
  }

  PolyMesh mesh = weld(voronoi_cells(seeds));
  if (distortion == 0.0) return mesh;

  const int nv = mesh.num_vertices();
  std::vector<double> shortest(nv, std::numeric_limits<double>::infinity());
  for (const auto& cell : mesh.cells())
    for (std::size_t k = 0; k < cell.size(); ++k) {
      const int a = cell[k];
      const int b = cell[(k + 1) % cell.size()];
      const double len = (mesh.vertex(a) - mesh.vertex(b)).norm();
      shortest[a] = std::min(shortest[a], len);
      shortest[b] = std::min(shortest[b], len);
    }

  std::vector<Vec2> offset(nv, Vec2::Zero());
  for (int v = 0; v < nv; ++v) {
    if (mesh.is_boundary(v)) continue;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    offset[v] = distortion * shortest[v] * Vec2(std::cos(phi), std::sin(phi));
  }

  std::vector<double> factor(nv, 1.0);
  std::vector<Point> xy(nv);
  for (int round = 0;; ++round) {
    for (int v = 0; v < nv; ++v) xy[v] = mesh.vertex(v) + factor[v] * offset[v];
    bool all_valid = true;
    for (const auto& cell : mesh.cells()) {
      if (valid_cell(gather(xy, cell))) continue;
      all_valid = false;
      for (int v : cell) factor[v] *= 0.5;
    }
    if (all_valid) break;
    if (round == 40) throw GeometryError("voronoi: distortion keeps inverting cells");
  }
  return PolyMesh::from_cells(std::move(xy), mesh.cells());
}

}  // namespace sfvem
