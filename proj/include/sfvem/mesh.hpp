#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sfvem/geometry.hpp"

namespace sfvem {

/// Conforming polygonal tessellation. Immutable once constructed; the
/// constructor validates orientation, simplicity, index ranges, edge
/// manifoldness and the boundary vertex set.
class PolyMesh {
 public:
  PolyMesh(std::vector<Point> vertices, std::vector<std::vector<int>> cells, std::vector<int> boundary_vertices);

  /// Same as the constructor, but boundary vertices are derived from the
  /// edges used by exactly one cell.
  static PolyMesh from_cells(std::vector<Point> vertices, std::vector<std::vector<int>> cells);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return num_edges_; }

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int i) const { return vertices_[i]; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  std::span<const int> cell(int c) const { return cells_[c]; }
  std::vector<Point> cell_points(int c) const;

  /// Sorted ascending.
  const std::vector<int>& boundary_vertices() const { return boundary_; }
  bool is_boundary(int v) const { return on_boundary_[v] != 0; }

  double total_area() const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<int> boundary_;
  std::vector<char> on_boundary_;
  int num_edges_ = 0;
};

struct MeshQualityReport {
  std::vector<double> cell_diameter;
  /// min edge length / diameter, per cell.
  std::vector<double> edge_ratio;
  double h = 0.0;
  double kappa = 0.0;
};

MeshQualityReport quality_report(const PolyMesh& mesh);

// Text format:
//   vem-mesh 1
//   vertices <n>    followed by n lines "x y"
//   cells <m>       followed by m lines "k i1 ... ik" (0-based, CCW)
//   boundary <b>    followed by b lines with one vertex index each
PolyMesh parse_mesh(std::istream& in);
PolyMesh read_mesh(const std::filesystem::path& path);
void print_mesh(std::ostream& out, const PolyMesh& mesh);
void write_mesh(const PolyMesh& mesh, const std::filesystem::path& path);

}  // namespace sfvem
