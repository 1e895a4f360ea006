#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sfvem/catalog.hpp"
#include "sfvem/system.hpp"

namespace sfvem {

/// Singular values of the stabilization-free diffusion matrix (K = I,
/// beta = 0, gamma = 0) of a single polygon.
struct SpectralAudit {
  std::string name;
  int n_vertices = 0;
  int ell = 0;
  Eigen::VectorXd singular_values;  // descending
  double sigma_min = 0.0;
  double sigma_r = 0.0;  // second smallest
  double sigma_max = 0.0;

  double sigma_r_over_max() const { return sigma_r / sigma_max; }
  /// Whether ell satisfies 2 ell + 2 >= N_E - 1.
  bool compliant() const;
};

SpectralAudit spectral_audit(const CatalogPolygon& polygon, int ell);

void write_audit_csv_header(std::ostream& out);
void write_audit_csv_row(std::ostream& out, const SpectralAudit& audit);

struct ErrorNorms {
  double e0 = 0.0;
  double e1 = 0.0;
  /// Set when a denominator vanished; e0/e1 are then absolute errors
  /// (0 when the exact solution is zero as well).
  bool unnormalized = false;
};

/// Relative errors of Pi^nabla u_h against the exact solution:
///   e0 = sqrt(sum_E ||u - Pi u_h||_E^2) / ||u||,
///   e1 = sqrt(sum_E ||sqrt(K)(grad u - grad Pi u_h)||_E^2) / ||sqrt(K) grad u||.
/// Element integrals use exact-degree polygon rules unless a fixed degree is
/// configured.
ErrorNorms error_norms(const PolyMesh& mesh, const DiscreteSolution& solution, const ProblemSpec& spec,
                       const QuadratureOptions& quad = {});

struct RateFit {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
};

/// Least-squares slope of log(error) against log(h).
double fit_slope(std::span<const double> h, std::span<const double> error);

struct ConvergenceRecord {
  int level = 0;
  double h = 0.0;
  int ndof = 0;
  double e0_sfvem = 0.0, e1_sfvem = 0.0;
  double e0_vem = 0.0, e1_vem = 0.0;  // NaN when the stabilized method was not run

  double ratio_e0() const { return e0_vem / e0_sfvem; }
  double ratio_e1() const { return e1_vem / e1_sfvem; }
};

RateFit fit_rates(std::span<const ConvergenceRecord> records, Method method);

struct ConvergenceOptions {
  bool run_sfvem = true;
  bool run_vem = true;
  int ell_offset = 0;
  QuadratureOptions quadrature;
};

/// Runs both methods on mesh_for(level) for every level and measures errors.
/// `on_level` fires after each level so callers can flush partial output.
std::vector<ConvergenceRecord> convergence_study(
    std::span<const int> levels, const std::function<PolyMesh(int)>& mesh_for, const ProblemSpec& spec,
    const ConvergenceOptions& options = {},
    const std::function<void(const ConvergenceRecord&)>& on_level = {});

void write_convergence_csv_header(std::ostream& out);
void write_convergence_csv_row(std::ostream& out, const ConvergenceRecord& record);

}  // namespace sfvem
