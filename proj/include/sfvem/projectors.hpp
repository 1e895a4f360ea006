#pragma once

#include <Eigen/Core>
#include <vector>

#include "sfvem/geometry.hpp"
#include "sfvem/harmonic.hpp"

namespace sfvem {

// Everything in this module reads a virtual function only through its vertex
// values and its piecewise-linear boundary trace; no interior evaluation of
// v_h ever happens.

/// Vertex values of a virtual function on one element.
struct ElementDofs {
  int element_id = -1;
  std::vector<Point> vertices;  // CCW
  Eigen::VectorXd values;
};

/// Frame used for P1 coefficients: centroid and diameter of the element.
ScaledFrame element_frame(const ElementGeometry& geom);

/// Energy projection onto P1 written as c0 + c1 xhat + c2 yhat in the element
/// frame.
struct NablaProjection {
  ScaledFrame frame;
  Eigen::Vector3d coeffs = Eigen::Vector3d::Zero();

  double operator()(const Point& p) const;
  Vec2 gradient() const { return coeffs.tail<2>() / frame.scale; }
};

/// 3 x N_E matrix taking vertex values to NablaProjection coefficients:
///   grad = (1/|E|) sum_e |e| (v_a + v_b)/2 n_e,
///   constant fixed by matching the boundary mean of v.
Eigen::Matrix<double, 3, Eigen::Dynamic> nabla_matrix(const ElementGeometry& geom);

NablaProjection nabla_projection(const ElementDofs& dofs);

/// Row r with r . v = (1/|E|) int_E Pi^nabla v, which equals the mean of v
/// over E for functions in the enhanced space.
Eigen::RowVectorXd pi0_row(const ElementGeometry& geom);

double pi0_projection(const ElementDofs& dofs, const NablaProjection& nabla);

enum class GramMode {
  boundary,  ///< <h_j, dh_i/dn> on the boundary, ell+1 Gauss nodes per edge
  area,      ///< grad h_i . grad h_j with a polygon rule of degree 2 ell
};

/// G_ij = (grad h_j, grad h_i)_E, symmetrized.
Eigen::MatrixXd hgrad_gram(std::span<const Point> polygon, const HarmonicBasis& basis, GramMode mode);

/// B_ij = (grad phi_j, grad h_i)_E = <phi_j, dh_i/dn>_{dE} for the vertex
/// basis phi_j, integrated with `nodes` Gauss points per edge
/// (default ceil((ell+2)/2), exact for the degree ell+1 integrand).
Eigen::MatrixXd hgrad_rhs_matrix(std::span<const Point> polygon, const HarmonicBasis& basis, int nodes = 0);

/// Linear map from vertex values to the coefficients d of
/// Pi^H grad v = sum_j d_j grad h_j.
struct HGradOperator {
  Eigen::MatrixXd gram;
  Eigen::MatrixXd rhs;     // B
  Eigen::MatrixXd coeffs;  // G^{-1} B, (2 ell + 2) x N_E
  bool pseudo_inverse = false;
  double gram_condition = 1.0;
};

/// Solves the Gram system by Cholesky; when the smallest eigenvalue falls
/// below 1e-12 times the largest, switches to an eigenvalue pseudo-inverse
/// and emits a warning.
HGradOperator hgrad_operator(std::span<const Point> polygon, const HarmonicBasis& basis);

struct HGradProjection {
  Eigen::VectorXd coeffs;
  Eigen::MatrixXd gram;
  bool pseudo_inverse = false;

  Vec2 evaluate(const HarmonicBasis& basis, const Point& p) const;
};

HGradProjection hgrad_projection(const ElementDofs& dofs, const HarmonicBasis& basis);

}  // namespace sfvem
