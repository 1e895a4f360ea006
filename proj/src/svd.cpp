#include "sfvem/svd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sfvem/errors.hpp"

namespace sfvem {

Eigen::VectorXd jacobi_singular_values(const Eigen::MatrixXd& A, double tol) {
  // Work on the orientation with at least as many rows as columns.
  Eigen::MatrixXd U = A.rows() >= A.cols() ? A : Eigen::MatrixXd(A.transpose());
  const Eigen::Index n = U.cols();
  // Columns below roundoff of the whole matrix hold no orientation to fix;
  // rotating them only chases noise.
  const double negligible = std::pow(std::numeric_limits<double>::epsilon() * A.norm(), 2);
  constexpr int kMaxSweeps = 80;
  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n - 1; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = U.col(i).squaredNorm();
        const double beta = U.col(j).squaredNorm();
        const double gamma = U.col(i).dot(U.col(j));
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Eigen::VectorXd ui = U.col(i);
        U.col(i) = c * ui - s * U.col(j);
        U.col(j) = s * ui + c * U.col(j);
      }
    }
  }
  if (!converged) throw Error("one-sided Jacobi SVD did not converge");
  Eigen::VectorXd sv = U.colwise().norm().transpose();
  std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
  return sv;
}

}  // namespace sfvem
