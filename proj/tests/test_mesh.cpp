#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "sfvem/catalog.hpp"
#include "sfvem/errors.hpp"
#include "sfvem/generators.hpp"
#include "sfvem/mesh.hpp"

using namespace sfvem;

namespace {

const char* kUnitSquare =
    "vem-mesh 1\n"
    "vertices 4\n0 0\n1 0\n1 1\n0 1\n"
    "cells 1\n4 0 1 2 3\n"
    "boundary 4\n0\n1\n2\n3\n";

PolyMesh parse(const std::string& text) {
  std::istringstream in(text);
  return parse_mesh(in);
}

std::string print(const PolyMesh& mesh) {
  std::ostringstream out;
  print_mesh(out, mesh);
  return out.str();
}

void check_unit_square_tiling(const PolyMesh& mesh) {
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto pts = mesh.cell_points(c);
    CHECK(signed_area(pts) > 0.0);
    CHECK(is_simple(pts));
  }
  CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-12));
  // Euler characteristic of a disc.
  CHECK(mesh.num_vertices() - mesh.num_edges() + mesh.num_cells() == 1);
  for (int v : mesh.boundary_vertices()) {
    const auto& p = mesh.vertex(v);
    const bool on_side = p.x() == 0.0 || p.x() == 1.0 || p.y() == 0.0 || p.y() == 1.0;
    CHECK(on_side);
  }
}

}  // namespace

TEST_CASE("read a single unit square") {
  const auto mesh = parse(kUnitSquare);
  CHECK(mesh.num_cells() == 1);
  CHECK(mesh.num_vertices() == 4);
  CHECK(mesh.boundary_vertices().size() == 4);
  CHECK(mesh.num_edges() == 4);
}

TEST_CASE("clockwise cell is a topology error") {
  std::string text = kUnitSquare;
  text.replace(text.find("4 0 1 2 3"), 9, "4 0 3 2 1");
  CHECK_THROWS_AS(parse(text), TopologyError);
}

TEST_CASE("out-of-range vertex index") {
  std::string text = kUnitSquare;
  text.replace(text.find("4 0 1 2 3"), 9, "4 0 1 2 7");
  CHECK_THROWS_AS(parse(text), IndexError);
}

TEST_CASE("malformed files are parse errors") {
  CHECK_THROWS_AS(parse("vem-mesh 2\n"), ParseError);
  CHECK_THROWS_AS(parse("vem-mesh 1\nvertices 2\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse("vem-mesh 1\nvertices 1\n0 zero\n"), ParseError);
  CHECK_THROWS_AS(parse(std::string(kUnitSquare) + "extra\n"), ParseError);
  CHECK_THROWS_AS(read_mesh("/nonexistent/mesh.txt"), ParseError);
}

TEST_CASE("boundary list must match boundary edges") {
  std::string text = kUnitSquare;
  text.replace(text.find("boundary 4\n0\n1\n2\n3\n"), 19, "boundary 3\n0\n1\n2\n");
  CHECK_THROWS_AS(parse(text), TopologyError);
}

TEST_CASE("non-manifold and mis-oriented edges") {
  const std::vector<Point> v = {Point(0, 0), Point(1, 0), Point(0.5, 1), Point(0.5, -1), Point(2, 0.5)};
  // Two cells traversing edge 0->1 in the same direction.
  CHECK_THROWS_AS(PolyMesh::from_cells(v, {{0, 1, 2}, {0, 1, 4, 2}}), TopologyError);
  // Three cells on edge 0-1.
  const std::vector<Point> w = {Point(0, 0), Point(1, 0), Point(0.5, 1), Point(0.5, -1), Point(0.5, -2)};
  CHECK_THROWS_AS(PolyMesh::from_cells(w, {{0, 1, 2}, {1, 0, 3}, {1, 0, 4}}), TopologyError);
}

TEST_CASE("self-intersecting cell is rejected") {
  const std::vector<Point> v = {Point(0, 0), Point(1, 1), Point(1, 0), Point(0, 1)};
  CHECK_FALSE(is_simple(v));
  const std::vector<Point> ok = {Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)};
  CHECK(is_simple(ok));
}

TEST_CASE("distorted grid round-trips bit-identically") {
  const auto mesh = generate_distorted_grid(3, 0.3, 11);
  const std::string text = print(mesh);
  const auto back = parse(text);
  CHECK(print(back) == text);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    CHECK(back.vertex(v).x() == mesh.vertex(v).x());
    CHECK(back.vertex(v).y() == mesh.vertex(v).y());
  }
  CHECK(back.cells() == mesh.cells());
}

TEST_CASE("uniform grid without distortion") {
  const auto mesh = generate_distorted_grid(2, 0.0, 99);
  REQUIRE(mesh.num_cells() == 4);
  for (int c = 0; c < 4; ++c) CHECK(signed_area(mesh.cell_points(c)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mesh.boundary_vertices().size() == 8);
}

TEST_CASE("distorted grid n=8") {
  const auto mesh = generate_distorted_grid(8, 0.3, 42);
  CHECK(mesh.num_cells() == 64);
  check_unit_square_tiling(mesh);
  const auto q = quality_report(mesh);
  CHECK(q.kappa > 0.0);
  // Interior vertices actually moved.
  int moved = 0;
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (!mesh.is_boundary(v)) moved += std::abs(mesh.vertex(v).x() * 8 - std::round(mesh.vertex(v).x() * 8)) > 1e-12;
  CHECK(moved > 0);
}

TEST_CASE("single-cell grid ignores distortion") {
  const auto mesh = generate_distorted_grid(1, 0.4, 7);
  REQUIRE(mesh.num_vertices() == 4);
  CHECK(mesh.vertex(0) == Point(0, 0));
  CHECK(mesh.vertex(1) == Point(1, 0));
  CHECK(mesh.vertex(2) == Point(0, 1));
  CHECK(mesh.vertex(3) == Point(1, 1));
}

TEST_CASE("grid argument checks") {
  CHECK_THROWS_AS(generate_distorted_grid(0, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_distorted_grid(4, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_distorted_grid(4, -0.1, 1), std::invalid_argument);
}

TEST_CASE("generators are deterministic") {
  CHECK(print(generate_distorted_grid(6, 0.3, 5)) == print(generate_distorted_grid(6, 0.3, 5)));
  CHECK(print(generate_distorted_grid(6, 0.3, 5)) != print(generate_distorted_grid(6, 0.3, 6)));
  CHECK(print(generate_voronoi(30, 2, 3, 0.25)) == print(generate_voronoi(30, 2, 3, 0.25)));
}

TEST_CASE("voronoi with one seed is the unit square") {
  const auto mesh = generate_voronoi(1, 0, 123, 0.0);
  REQUIRE(mesh.num_cells() == 1);
  CHECK(mesh.num_vertices() == 4);
  CHECK(signed_area(mesh.cell_points(0)) == doctest::Approx(1.0));
}

TEST_CASE("voronoi of the four sub-square centres") {
  const std::vector<Point> seeds = {Point(0.25, 0.25), Point(0.75, 0.25), Point(0.75, 0.75), Point(0.25, 0.75)};
  const auto mesh = voronoi_from_seeds(seeds);
  REQUIRE(mesh.num_cells() == 4);
  CHECK(mesh.num_vertices() == 9);
  for (int c = 0; c < 4; ++c) {
    const auto pts = mesh.cell_points(c);
    CHECK(pts.size() == 4);
    CHECK(signed_area(pts) == doctest::Approx(0.25).epsilon(1e-14));
  }
  check_unit_square_tiling(mesh);
}

TEST_CASE("distorted voronoi n=50") {
  const auto mesh = generate_voronoi(50, 3, 1, 0.25);
  CHECK(mesh.num_cells() == 50);
  check_unit_square_tiling(mesh);
}

TEST_CASE("generated meshes satisfy the mesh invariants (property sweep)") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    CAPTURE(seed);
    check_unit_square_tiling(generate_distorted_grid(static_cast<int>(3 + seed), 0.45, seed));
    check_unit_square_tiling(generate_voronoi(static_cast<int>(10 * seed), static_cast<int>(seed % 3), seed, 0.4));
    const auto m = generate_voronoi(static_cast<int>(10 * seed), 1, seed, 0.25);
    CHECK(parse(print(m)).num_cells() == m.num_cells());
  }
}

TEST_CASE("quality report") {
  const auto grid = generate_distorted_grid(2, 0.0, 0);
  const auto q = quality_report(grid);
  CHECK(q.h == doctest::Approx(0.5 * std::sqrt(2.0)));
  for (double r : q.edge_ratio) CHECK(r == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(q.kappa == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto square = parse(kUnitSquare);
  CHECK(quality_report(square).cell_diameter[0] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("polygon catalog") {
  const auto cat = catalog_polygons();
  REQUIRE(cat.size() == 18);
  const std::map<int, std::string> family = {
      {3, "irregular"},      {4, "concave"},       {5, "regular"},   {6, "hanging-nodes"}, {7, "regular"},
      {8, "star"},           {9, "hanging-nodes"}, {10, "regular"},  {11, "concave"},      {12, "star"},
      {13, "hanging-nodes"}, {14, "irregular"},    {15, "regular"},  {16, "hanging-nodes"}, {17, "concave"},
      {18, "collapsing-edge"}, {19, "regular"},    {20, "star"}};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto& p = cat[i];
    CAPTURE(p.name);
    CHECK(p.n_vertices() == static_cast<int>(i) + 3);
    CHECK(p.name == family.at(p.n_vertices()));
    CHECK(signed_area(p.vertices) > 0.0);
    CHECK(is_simple(p.vertices));
  }
}

TEST_CASE("catalog pathologies") {
  const auto cat = catalog_polygons();
  auto by_n = [&](int n) { return cat[n - 3]; };

  const auto pent = by_n(5);
  CHECK(pent.name == "regular");
  for (const auto& v : pent.vertices) CHECK(v.norm() == doctest::Approx(1.0));

  const auto hang = by_n(16);
  int collinear = 0;
  const int n = hang.n_vertices();
  for (int k = 0; k < n; ++k) {
    const auto& a = hang.vertices[(k + n - 1) % n];
    const auto& b = hang.vertices[k];
    const auto& c = hang.vertices[(k + 1) % n];
    if (std::abs(orient(a, b, c)) <= 1e-14) ++collinear;
  }
  CHECK(collinear >= 2);

  const auto col = by_n(18);
  CHECK(col.name == "collapsing-edge");
  CHECK(min_edge_length(col.vertices) <= 1e-3 * diameter(col.vertices));

  // Concave entries have a reflex vertex.
  for (int m : {4, 11, 17}) {
    const auto& v = by_n(m).vertices;
    bool reflex = false;
    for (int k = 0; k < m; ++k) reflex = reflex || orient(v[(k + m - 1) % m], v[k], v[(k + 1) % m]) < 0.0;
    CHECK(reflex);
  }
}
