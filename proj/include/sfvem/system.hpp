#pragma once

#include <Eigen/Sparse>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sfvem/element.hpp"
#include "sfvem/mesh.hpp"
#include "sfvem/problem.hpp"

namespace sfvem {

struct AssemblyOptions {
  Method method = Method::sfvem;
  /// Added to the minimal degree from ell_rule() on every element.
  int ell_offset = 0;
  /// When >= 0, every element uses this ell regardless of its vertex count.
  int forced_ell = -1;
  QuadratureOptions quadrature;
  double stabilization_scale = -1.0;
};

/// Reduced system on the free (interior) vertices.
struct GlobalSystem {
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  Eigen::VectorXd rhs;
  std::vector<int> free_index;     // vertex -> reduced index, -1 on the boundary
  std::vector<int> free_vertices;  // reduced index -> vertex
  Eigen::VectorXd boundary_values;  // full length, zero at free vertices
  Method method = Method::sfvem;
  std::vector<int> element_ell;  // -1 for the stabilized method
  int pseudo_inverse_elements = 0;
  bool under_integrated = false;

  int num_free() const { return static_cast<int>(free_vertices.size()); }
};

struct DiscreteSolution {
  Eigen::VectorXd values;  // one per mesh vertex
  std::vector<int> element_ell;
  Method method = Method::sfvem;
  double residual = 0.0;  // ||A x - b|| / ||b|| on the reduced system
};

/// Scatter-adds every element block, then eliminates boundary rows and
/// columns. Dirichlet data comes from spec.dirichlet when set, otherwise it is
/// homogeneous.
GlobalSystem assemble(const PolyMesh& mesh, const ProblemSpec& spec, const AssemblyOptions& options = {});

/// Sparse LU with partial pivoting. Throws SingularSystemError when the
/// factorization breaks down or the relative residual exceeds 1e-8.
DiscreteSolution solve(const GlobalSystem& system);

/// CSV "vertex_index,x,y,u_h", full precision.
void write_solution_csv(std::ostream& out, const PolyMesh& mesh, const DiscreteSolution& solution);

}  // namespace sfvem
