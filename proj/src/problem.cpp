#include "sfvem/problem.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sfvem/rng.hpp"

namespace sfvem {

Poly2 manufactured_rhs(const Poly2& u, const Eigen::Matrix2d& K, const Poly2& beta_x, const Poly2& beta_y,
                       const Poly2& gamma) {
  const Poly2 ux = u.dx();
  const Poly2 uy = u.dy();
  Poly2 f = -(K(0, 0) * ux.dx() + K(0, 1) * uy.dx() + K(1, 0) * ux.dy() + K(1, 1) * uy.dy());
  f += beta_x * ux;
  f += beta_y * uy;
  f += gamma * u;
  return f;
}

Eigen::Matrix2d rotated_anisotropic_tensor(double theta, double ratio) {
  Eigen::Matrix2d G;
  G << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return G * Eigen::Vector2d(1.0, ratio).asDiagonal() * G.transpose();
}

Poly2 benchmark_beta1(double Ra, double Rb) {
  // Expanded about the centre of the unit square: the factors (1 - x)^4 and
  // the y-bracket cancel badly near x = 1 or y = 1 in a plain monomial basis.
  const Poly2 x = Poly2::x(0.5, 0.5);
  const Poly2 y = Poly2::y(0.5, 0.5);
  const Poly2 one = Poly2::constant(1.0, 0.5, 0.5);
  auto pow = [&one](const Poly2& p, int k) {
    Poly2 r = one;
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
  };
  Poly2 bracket = 4.0 * Rb * (one - 5.0 * y + 9.0 * pow(y, 2) - 7.0 * pow(y, 3) + 2.0 * pow(y, 4));
  bracket += -5.0 * y + 24.0 * pow(y, 2) - 42.0 * pow(y, 3) + 32.0 * pow(y, 4) - 9.0 * pow(y, 5);
  return 250000.0 * pow(x, 4) * pow(y, 3) * (Ra * one - x) * pow(one - x, 4) * bracket;
}

ProblemSpec build_benchmark_coefficients(double R1, double R2, double theta) {
  if (R1 < 0.0 || R1 > 1.0 || R2 < 0.0 || R2 > 1.0) throw std::invalid_argument("R1 and R2 must lie in [0, 1]");
  ProblemSpec spec;
  spec.K = rotated_anisotropic_tensor(theta, 1e-9);
  spec.beta_x = benchmark_beta1(R1, R2);
  spec.beta_y = -benchmark_beta1(R2, R1).swap_xy();
  const Poly2 x = Poly2::x(0.5, 0.5);
  const Poly2 y = Poly2::y(0.5, 0.5);
  const Poly2 one = Poly2::constant(1.0, 0.5, 0.5);
  spec.gamma = x * (one - x) * y * (one - y);
  spec.exact_u = spec.beta_x;
  spec.f = manufactured_rhs(*spec.exact_u, spec.K, spec.beta_x, spec.beta_y, spec.gamma);
  spec.theta = theta;
  spec.R1 = R1;
  spec.R2 = R2;
  return spec;
}

ProblemSpec poisson_unit_load() {
  ProblemSpec spec;
  spec.f = Poly2::constant(1.0);
  return spec;
}

ProblemSpec manufactured_problem(const Poly2& u, const Eigen::Matrix2d& K, const Poly2& beta_x, const Poly2& beta_y,
                                 const Poly2& gamma) {
  ProblemSpec spec;
  spec.K = K;
  spec.beta_x = beta_x;
  spec.beta_y = beta_y;
  spec.gamma = gamma;
  spec.exact_u = u;
  spec.f = manufactured_rhs(u, K, beta_x, beta_y, gamma);
  return spec;
}

void ProblemSpec::validate() const {
  if (std::abs(K(0, 1) - K(1, 0)) > 1e-14 * K.norm()) throw std::invalid_argument("K is not symmetric");
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(K);
  if (!(eig.eigenvalues()(0) > 0.0)) throw std::invalid_argument("K is not positive definite");

  if (has_advection()) {
    const Poly2 div = beta_x.dx() + beta_y.dy();
    const Poly2 bxx = beta_x.dx(), bxy = beta_x.dy(), byx = beta_y.dx(), byy = beta_y.dy();
    Rng rng(20240601);
    double div_max = 0.0;
    double grad_max = 0.0;
    for (int s = 0; s < 20; ++s) {
      const double px = rng.uniform();
      const double py = rng.uniform();
      div_max = std::max(div_max, std::abs(div(px, py)));
      grad_max = std::max({grad_max, std::abs(bxx(px, py)), std::abs(bxy(px, py)), std::abs(byx(px, py)),
                           std::abs(byy(px, py))});
    }
    if (div_max > 1e-9 * std::max(grad_max, 1e-300)) throw std::invalid_argument("beta is not divergence-free");
  }
  if (has_reaction()) {
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j)
        if (gamma(i / 10.0, j / 10.0) < -1e-14) throw std::invalid_argument("gamma is negative");
  }
}

}  // namespace sfvem
