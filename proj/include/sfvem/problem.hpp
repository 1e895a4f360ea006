#pragma once

#include <Eigen/Core>
#include <optional>

#include "sfvem/poly2.hpp"

namespace sfvem {

/// Coefficients of -div(K grad u) + beta . grad u + gamma u = f on the unit
/// square. K is constant; beta, gamma and f are polynomials.
struct ProblemSpec {
  Eigen::Matrix2d K = Eigen::Matrix2d::Identity();
  Poly2 beta_x;
  Poly2 beta_y;
  Poly2 gamma;
  Poly2 f;
  std::optional<Poly2> exact_u;
  /// Boundary data; unset means homogeneous Dirichlet.
  std::optional<Poly2> dirichlet;

  // Parameters of the anisotropic benchmark (informational elsewhere).
  double theta = 0.0;
  double R1 = 0.0;
  double R2 = 0.0;

  bool has_advection() const { return !beta_x.is_zero() || !beta_y.is_zero(); }
  bool has_reaction() const { return !gamma.is_zero(); }

  /// Throws std::invalid_argument if K is not SPD, beta is not divergence-free
  /// at sample points, or gamma is negative on a sample grid of the unit square.
  void validate() const;
};

/// f = -div(K grad u) + beta . grad u + gamma u, computed exactly.
Poly2 manufactured_rhs(const Poly2& u, const Eigen::Matrix2d& K, const Poly2& beta_x, const Poly2& beta_y,
                       const Poly2& gamma);

/// G(theta) diag(1, ratio) G(theta)^T with the Givens rotation G.
Eigen::Matrix2d rotated_anisotropic_tensor(double theta, double ratio);

/// 250000 x^4 y^3 (Ra - x)(1 - x)^4 [4 Rb (1-5y+9y^2-7y^3+2y^4) - 5y + 24y^2 - 42y^3 + 32y^4 - 9y^5]
Poly2 benchmark_beta1(double Ra, double Rb);

/// Anisotropic advection-diffusion-reaction benchmark:
/// K = G(theta) diag(1, 1e-9) G(theta)^T, beta_1 as above with (Ra, Rb) = (R1, R2),
/// beta_2(x, y) = -beta_1(y, x) with the roles of R1 and R2 exchanged (the
/// stream-function form, which keeps div beta = 0), gamma = x(1-x)y(1-y),
/// exact solution u = beta_1 and f manufactured from it.
ProblemSpec build_benchmark_coefficients(double R1, double R2, double theta);

/// K = I, no advection or reaction, f = 1, no exact solution.
ProblemSpec poisson_unit_load();

/// Manufactured problem with given exact solution and constant K.
ProblemSpec manufactured_problem(const Poly2& u, const Eigen::Matrix2d& K, const Poly2& beta_x = {},
                                 const Poly2& beta_y = {}, const Poly2& gamma = {});

}  // namespace sfvem
