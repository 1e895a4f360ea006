#pragma once

#include <string>
#include <vector>

#include "sfvem/geometry.hpp"

namespace sfvem {

struct CatalogPolygon {
  std::string name;
  std::vector<Point> vertices;  // CCW
  int n_vertices() const { return static_cast<int>(vertices.size()); }
};

// Eighteen reproducible polygons with 3..20 vertices covering the usual
// pathologies: regular, star, concave, irregular, hanging nodes and a
// collapsing edge. The family of each vertex count is fixed:
//
//   3 irregular      8 star            13 hanging-nodes  18 collapsing-edge
//   4 concave        9 hanging-nodes   14 irregular      19 regular
//   5 regular       10 regular         15 regular        20 star
//   6 hanging-nodes 11 concave         16 hanging-nodes
//   7 regular       12 star            17 concave
//
// Recipes: regular = regular N-gon on the unit circle; star = alternating
// radii 1 and 0.45; concave = regular N-gon with one vertex pulled in to
// 0.35 inside the chord joining its neighbours; irregular = regular N-gon with seeded radial and angular
// jitter; hanging-nodes = irregular polygon whose every other edge carries a
// collinear midpoint; collapsing-edge = irregular polygon with one edge shrunk
// below 1e-3 of the diameter.
std::vector<CatalogPolygon> catalog_polygons();

std::vector<Point> regular_polygon(int n, double radius = 1.0);

}  // namespace sfvem
