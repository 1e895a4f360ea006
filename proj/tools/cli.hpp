#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sfvem/mesh.hpp"
#include "sfvem/problem.hpp"

namespace sfvem::cli {

enum class ExitCode { ok = 0, input_error = 1, audit_failure = 2 };

struct RunConfig {
  std::string command;
  // Mesh source: a file, or a generator with its parameters.
  std::optional<std::filesystem::path> mesh_file;
  std::string generator = "grid";
  int n = 8;
  int seeds = 100;
  int lloyd = 2;
  std::optional<double> delta;  // unset: 0.3 for grids, 0.25 for Voronoi
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> polygon_file;
  std::string problem = "benchmark";
  std::string method;  // unset: sfvem for solve, both for convergence
  int ell_offset = 0;
  double theta = std::numbers::pi / 6;
  double r1 = 0.9;
  double r2 = 0.3;
  int quad_degree = 0;
  std::vector<int> levels = {8, 16, 32, 64};
  std::filesystem::path out = ".";

  double effective_delta() const { return delta ? *delta : (generator == "voronoi" ? 0.25 : 0.3); }
};

/// Mesh for one refinement level: an n x n grid, or level^2 Voronoi seeds.
PolyMesh generated_mesh(const RunConfig& config, int level);
ProblemSpec make_problem(const RunConfig& config);
/// One vertex per line ("x y"); blank lines and '#' comments are skipped.
/// Clockwise input is reversed.
std::vector<Point> read_polygon(const std::filesystem::path& path);

int cmd_generate_mesh(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check_polygon(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_convergence(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (args[0] is the program name) and dispatches. Library
/// warnings are routed to `err` while the command runs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sfvem::cli
