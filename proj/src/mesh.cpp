#include "sfvem/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "sfvem/errors.hpp"

namespace sfvem {
namespace {

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

struct EdgeUse {
  int count = 0;
  int from = -1;  // tail of the first directed use
};

std::unordered_map<std::uint64_t, EdgeUse> collect_edges(const std::vector<std::vector<int>>& cells) {
  std::unordered_map<std::uint64_t, EdgeUse> edges;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    for (std::size_t k = 0; k < cell.size(); ++k) {
      const int a = cell[k];
      const int b = cell[(k + 1) % cell.size()];
      auto& use = edges[edge_key(a, b)];
      if (use.count == 1 && use.from == a)
        throw TopologyError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") of cell " + std::to_string(c) +
                            " has the same orientation as in its neighbour");
      if (use.count == 2)
        throw TopologyError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") shared by more than two cells");
      if (use.count == 0) use.from = a;
      ++use.count;
    }
  }
  return edges;
}

std::vector<int> boundary_from_edges(const std::unordered_map<std::uint64_t, EdgeUse>& edges, int nv) {
  std::vector<char> mark(nv, 0);
  for (const auto& [key, use] : edges) {
    if (use.count != 1) continue;
    mark[static_cast<int>(key >> 32)] = 1;
    mark[static_cast<int>(key & 0xffffffffu)] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < nv; ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

}  // namespace

PolyMesh::PolyMesh(std::vector<Point> vertices, std::vector<std::vector<int>> cells, std::vector<int> boundary_vertices)
    : vertices_(std::move(vertices)), cells_(std::move(cells)), boundary_(std::move(boundary_vertices)) {
  const int nv = num_vertices();
  if (cells_.empty()) throw TopologyError("mesh has no cells");

  std::vector<char> used(nv, 0);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& cell = cells_[c];
    if (cell.size() < 3) throw TopologyError("cell " + std::to_string(c) + " has fewer than 3 vertices");
    for (int v : cell) {
      if (v < 0 || v >= nv)
        throw IndexError("cell " + std::to_string(c) + " references vertex " + std::to_string(v) + " (have " +
                         std::to_string(nv) + ")");
      used[v] = 1;
    }
    const auto pts = cell_points(static_cast<int>(c));
    if (signed_area(pts) <= 0.0) throw TopologyError("cell " + std::to_string(c) + " is not counter-clockwise");
    if (!is_simple(pts)) throw TopologyError("cell " + std::to_string(c) + " is not a simple polygon");
  }
  for (int v = 0; v < nv; ++v)
    if (!used[v]) throw TopologyError("vertex " + std::to_string(v) + " is not used by any cell");

  const auto edges = collect_edges(cells_);
  num_edges_ = static_cast<int>(edges.size());

  for (int v : boundary_)
    if (v < 0 || v >= nv) throw IndexError("boundary vertex " + std::to_string(v) + " out of range");
  std::sort(boundary_.begin(), boundary_.end());
  boundary_.erase(std::unique(boundary_.begin(), boundary_.end()), boundary_.end());
  if (boundary_ != boundary_from_edges(edges, nv))
    throw TopologyError("boundary vertex list does not match the vertices of boundary edges");

  on_boundary_.assign(nv, 0);
  for (int v : boundary_) on_boundary_[v] = 1;
}

PolyMesh PolyMesh::from_cells(std::vector<Point> vertices, std::vector<std::vector<int>> cells) {
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int v : cells[c])
      if (v < 0 || v >= static_cast<int>(vertices.size()))
        throw IndexError("cell " + std::to_string(c) + " references vertex " + std::to_string(v));
  auto boundary = boundary_from_edges(collect_edges(cells), static_cast<int>(vertices.size()));
  return PolyMesh(std::move(vertices), std::move(cells), std::move(boundary));
}

std::vector<Point> PolyMesh::cell_points(int c) const {
  std::vector<Point> pts;
  pts.reserve(cells_[c].size());
  for (int v : cells_[c]) pts.push_back(vertices_[v]);
  return pts;
}

double PolyMesh::total_area() const {
  double a = 0.0;
  for (int c = 0; c < num_cells(); ++c) a += signed_area(cell_points(c));
  return a;
}

MeshQualityReport quality_report(const PolyMesh& mesh) {
  MeshQualityReport r;
  r.cell_diameter.resize(mesh.num_cells());
  r.edge_ratio.resize(mesh.num_cells());
  r.kappa = std::numeric_limits<double>::infinity();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto pts = mesh.cell_points(c);
    const double d = diameter(pts);
    r.cell_diameter[c] = d;
    r.edge_ratio[c] = min_edge_length(pts) / d;
    r.h = std::max(r.h, d);
    r.kappa = std::min(r.kappa, r.edge_ratio[c]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text I/O

namespace {

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(std::string("unexpected end of mesh file while reading ") + what);
  return tok;
}

void expect(std::istream& in, const std::string& keyword) {
  const auto tok = next_token(in, keyword.c_str());
  if (tok != keyword) throw ParseError("expected '" + keyword + "', found '" + tok + "'");
}

long parse_int(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size()) throw ParseError(std::string("invalid integer '") + tok + "' for " + what);
  return v;
}

double parse_double(const std::string& tok) {
  std::istringstream ss(tok);
  double v = 0.0;
  ss >> v;
  if (!ss || !ss.eof()) throw ParseError("invalid number '" + tok + "'");
  return v;
}

std::size_t parse_count(std::istream& in, const char* what) {
  const long n = parse_int(next_token(in, what), what);
  if (n < 0) throw ParseError(std::string("negative count for ") + what);
  return static_cast<std::size_t>(n);
}

}  // namespace

PolyMesh parse_mesh(std::istream& in) {
  expect(in, "vem-mesh");
  if (parse_int(next_token(in, "version"), "version") != 1) throw ParseError("unsupported mesh format version");

  expect(in, "vertices");
  std::vector<Point> vertices(parse_count(in, "vertex count"));
  for (auto& p : vertices) {
    p.x() = parse_double(next_token(in, "vertex x"));
    p.y() = parse_double(next_token(in, "vertex y"));
  }

  expect(in, "cells");
  std::vector<std::vector<int>> cells(parse_count(in, "cell count"));
  for (auto& cell : cells) {
    cell.resize(parse_count(in, "cell size"));
    for (int& v : cell) v = static_cast<int>(parse_int(next_token(in, "cell vertex"), "cell vertex"));
  }

  expect(in, "boundary");
  std::vector<int> boundary(parse_count(in, "boundary count"));
  for (int& v : boundary) v = static_cast<int>(parse_int(next_token(in, "boundary vertex"), "boundary vertex"));

  std::string extra;
  if (in >> extra) throw ParseError("trailing content after boundary section: '" + extra + "'");
  return PolyMesh(std::move(vertices), std::move(cells), std::move(boundary));
}

PolyMesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file " + path.string());
  return parse_mesh(in);
}

void print_mesh(std::ostream& out, const PolyMesh& mesh) {
  char buf[64];
  out << "vem-mesh 1\n";
  out << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }
  out << "cells " << mesh.num_cells() << '\n';
  for (const auto& cell : mesh.cells()) {
    out << cell.size();
    for (int v : cell) out << ' ' << v;
    out << '\n';
  }
  out << "boundary " << mesh.boundary_vertices().size() << '\n';
  for (int v : mesh.boundary_vertices()) out << v << '\n';
}

void write_mesh(const PolyMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file " + path.string());
  print_mesh(out, mesh);
}

}  // namespace sfvem
