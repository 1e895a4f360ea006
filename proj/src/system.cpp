#include "sfvem/system.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <ostream>
#include <string>

#include "sfvem/errors.hpp"
#include "sfvem/log.hpp"

namespace sfvem {

GlobalSystem assemble(const PolyMesh& mesh, const ProblemSpec& spec, const AssemblyOptions& options) {
  GlobalSystem sys;
  sys.method = options.method;
  const int nv = mesh.num_vertices();

  sys.free_index.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (mesh.is_boundary(v)) continue;
    sys.free_index[v] = static_cast<int>(sys.free_vertices.size());
    sys.free_vertices.push_back(v);
  }
  sys.boundary_values = Eigen::VectorXd::Zero(nv);
  if (spec.dirichlet)
    for (int v : mesh.boundary_vertices()) sys.boundary_values(v) = (*spec.dirichlet)(mesh.vertex(v).x(), mesh.vertex(v).y());

  const int nf = sys.num_free();
  sys.rhs = Eigen::VectorXd::Zero(nf);
  std::vector<Eigen::Triplet<double>> triplets;
  sys.element_ell.assign(mesh.num_cells(), -1);

  VemOptions vem;
  vem.quadrature = options.quadrature;
  vem.stabilization_scale = options.stabilization_scale;

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto cell = mesh.cell(c);
    LocalElementMatrices local;
    try {
      const auto geom = ElementGeometry::from_vertices(mesh.cell_points(c));
      if (options.method == Method::sfvem) {
        const int ell = options.forced_ell >= 0 ? options.forced_ell : ell_rule(geom.size(), options.ell_offset);
        local = sfvem_local(geom, spec, ell, options.quadrature);
      } else {
        local = standard_vem_local(geom, spec, vem);
      }
    } catch (const GeometryError& e) {
      throw GeometryError("element " + std::to_string(c) + ": " + e.what());
    }
    sys.element_ell[c] = local.ell;
    sys.pseudo_inverse_elements += local.pseudo_inverse ? 1 : 0;
    sys.under_integrated = sys.under_integrated || local.under_integrated;

    const Eigen::MatrixXd A = local.total();
    const int n = static_cast<int>(cell.size());
    for (int i = 0; i < n; ++i) {
      const int row = sys.free_index[cell[i]];
      if (row < 0) continue;
      sys.rhs(row) += local.load(i);
      for (int j = 0; j < n; ++j) {
        const int col = sys.free_index[cell[j]];
        if (col >= 0)
          triplets.emplace_back(row, col, A(i, j));
        else
          sys.rhs(row) -= A(i, j) * sys.boundary_values(cell[j]);
      }
    }
  }
  sys.matrix.resize(nf, nf);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

namespace {

// SparseLU keeps the diagonal of U inside its supernodal L store.
class PivotReportingLU : public Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> {
 public:
  double smallest_pivot() const {
    double smallest = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < this->cols(); ++j)
      for (SCMatrix::InnerIterator it(m_Lstore, j); it; ++it)
        if (it.index() == j) {
          smallest = std::min(smallest, std::abs(it.value()));
          break;
        }
    return smallest;
  }
};

}  // namespace

DiscreteSolution solve(const GlobalSystem& system) {
  DiscreteSolution sol;
  sol.method = system.method;
  sol.element_ell = system.element_ell;
  sol.values = system.boundary_values;
  if (system.num_free() == 0) return sol;

  const Eigen::SparseMatrix<double> A = system.matrix;
  PivotReportingLU lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  const std::string guidance =
      " (a singular element matrix usually means ell is below the vertex-count bound 2 ell + 2 >= N_E - 1,"
      " or the mesh has degenerate cells)";
  if (lu.info() != Eigen::Success)
    throw SingularSystemError("sparse LU failed: " + lu.lastErrorMessage() + guidance);

  double max_entry = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) max_entry = std::max(max_entry, std::abs(it.value()));
  const double pivot = lu.smallest_pivot();
  if (!(pivot > 1e-13 * max_entry)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "matrix is numerically singular: smallest pivot %.3e, largest entry %.3e", pivot,
                  max_entry);
    throw SingularSystemError(buf + guidance);
  }

  const Eigen::VectorXd x = lu.solve(system.rhs);
  const double bnorm = system.rhs.norm();
  const double rnorm = (A * x - system.rhs).norm();
  sol.residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  if (!std::isfinite(sol.residual) || sol.residual > 1e-8) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "linear solve residual %.3e, smallest pivot %.3e", sol.residual, pivot);
    throw SingularSystemError(buf + guidance);
  }
  for (int k = 0; k < system.num_free(); ++k) sol.values(system.free_vertices[k]) = x(k);
  return sol;
}

void write_solution_csv(std::ostream& out, const PolyMesh& mesh, const DiscreteSolution& solution) {
  out << "vertex_index,x,y,u_h\n";
  char buf[128];
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    std::snprintf(buf, sizeof buf, "%d,%.16e,%.16e,%.16e\n", v, mesh.vertex(v).x(), mesh.vertex(v).y(),
                  solution.values(v));
    out << buf;
  }
}

}  // namespace sfvem
