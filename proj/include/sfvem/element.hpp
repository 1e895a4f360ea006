#pragma once

#include <Eigen/Core>

#include "sfvem/geometry.hpp"
#include "sfvem/problem.hpp"

namespace sfvem {

enum class Method { sfvem, vem };

const char* to_string(Method m);

/// Volume quadrature control. With `volume_degree == 0` each term is
/// integrated exactly: advection at deg(beta) + ell + 1, reaction at
/// deg(gamma), load at deg(f). A positive value forces that degree for every
/// volume term and flags terms that need more.
struct QuadratureOptions {
  int volume_degree = 0;
};

struct VemOptions {
  QuadratureOptions quadrature;
  /// dofi-dofi stabilization scale; negative selects trace(K)/2.
  double stabilization_scale = -1.0;
};

/// Element blocks of the discrete form. Row index = test function, column
/// index = trial function, so a(u, v) = v^T A u.
struct LocalElementMatrices {
  int element_id = -1;
  int ell = -1;  // -1 for the stabilized method
  Eigen::MatrixXd diffusion;
  Eigen::MatrixXd advection;
  Eigen::MatrixXd reaction;
  Eigen::VectorXd load;

  Eigen::MatrixXd hgrad;  // Pi^H coefficients per vertex basis function (empty for VEM)
  Eigen::MatrixXd nabla;  // 3 x N_E
  Eigen::RowVectorXd pi0;

  bool pseudo_inverse = false;
  bool under_integrated = false;

  Eigen::MatrixXd total() const { return diffusion + advection + reaction; }
};

/// Smallest ell >= 0 with 2 ell + 2 >= n_vertices - 1, plus `offset`
/// (clamped at zero).
int ell_rule(int n_vertices, int offset = 0);

/// Stabilization-free element:
///   (K Pi^H grad u, Pi^H grad v) + (beta . Pi^H grad u, Pi0 v) + (gamma Pi0 u, Pi0 v) = (f, Pi0 v).
/// `ell` below ell_rule() is accepted so instability can be demonstrated.
LocalElementMatrices sfvem_local(const ElementGeometry& geom, const ProblemSpec& spec, int ell,
                                 const QuadratureOptions& quad = {});

/// Stabilized first-order element with dofi-dofi stabilization.
LocalElementMatrices standard_vem_local(const ElementGeometry& geom, const ProblemSpec& spec,
                                        const VemOptions& options = {});

}  // namespace sfvem
