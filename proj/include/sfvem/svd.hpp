#pragma once

#include <Eigen/Core>

namespace sfvem {

/// Singular values of a dense matrix by one-sided (Hestenes) Jacobi
/// rotations, sorted descending. Sweeps stop once every column pair is
/// orthogonal to `tol` relative to the product of their norms.
Eigen::VectorXd jacobi_singular_values(const Eigen::MatrixXd& A, double tol = 1e-14);

}  // namespace sfvem
