#include "sfvem/projectors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <string>

#include "sfvem/errors.hpp"
#include "sfvem/log.hpp"
#include "sfvem/quadrature.hpp"

namespace sfvem {

ScaledFrame element_frame(const ElementGeometry& geom) { return ScaledFrame(geom.centroid, geom.diameter); }

double NablaProjection::operator()(const Point& p) const {
  const Point q = frame.to_local(p);
  return coeffs(0) + coeffs(1) * q.x() + coeffs(2) * q.y();
}

Eigen::Matrix<double, 3, Eigen::Dynamic> nabla_matrix(const ElementGeometry& geom) {
  const int n = geom.size();
  const auto& v = geom.vertices;
  Eigen::Matrix<double, 3, Eigen::Dynamic> P = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, n);
  Eigen::Matrix<double, 2, Eigen::Dynamic> grad = Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, n);
  Eigen::RowVectorXd boundary_int = Eigen::RowVectorXd::Zero(n);
  Vec2 moment = Vec2::Zero();  // int_{dE} (x - x_E)
  for (int k = 0; k < n; ++k) {
    const int kn = (k + 1) % n;
    const double len = (v[kn] - v[k]).norm();
    const Vec2 nrm = outward_normal(v[k], v[kn]);
    // Trace is linear on the edge: trapezoid rule is exact.
    grad.col(k) += 0.5 * len * nrm;
    grad.col(kn) += 0.5 * len * nrm;
    boundary_int(k) += 0.5 * len;
    boundary_int(kn) += 0.5 * len;
    moment += len * (0.5 * (v[k] + v[kn]) - geom.centroid);
  }
  grad /= geom.area;
  P.row(0) = (boundary_int - moment.transpose() * grad) / geom.perimeter;
  P.bottomRows<2>() = geom.diameter * grad;
  return P;
}

NablaProjection nabla_projection(const ElementDofs& dofs) {
  if (dofs.values.size() != static_cast<Eigen::Index>(dofs.vertices.size()))
    throw std::invalid_argument("dof count differs from vertex count");
  const auto geom = ElementGeometry::from_vertices(dofs.vertices);
  NablaProjection out;
  out.frame = element_frame(geom);
  out.coeffs = nabla_matrix(geom) * dofs.values;
  return out;
}

Eigen::RowVectorXd pi0_row(const ElementGeometry& geom) {
  // Pi^nabla v is linear, so its mean is its value at the centroid.
  const auto P = nabla_matrix(geom);
  const Point c = element_frame(geom).to_local(geom.centroid);
  return P.row(0) + c.x() * P.row(1) + c.y() * P.row(2);
}

double pi0_projection(const ElementDofs& dofs, const NablaProjection& nabla) {
  const auto geom = ElementGeometry::from_vertices(dofs.vertices);
  return nabla(geom.centroid);
}

Eigen::MatrixXd hgrad_gram(std::span<const Point> polygon, const HarmonicBasis& basis, GramMode mode) {
  const int m = basis.size();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  std::vector<double> h;
  std::vector<Vec2> g;
  if (mode == GramMode::boundary) {
    const EdgeRule& rule = gauss_legendre(basis.ell() + 1);
    const int n = static_cast<int>(polygon.size());
    Eigen::VectorXd hv(m), dn(m);
    for (int k = 0; k < n; ++k) {
      const Point& a = polygon[k];
      const Point& b = polygon[(k + 1) % n];
      const Vec2 nrm = outward_normal(a, b);
      const double half_len = 0.5 * (b - a).norm();
      for (int q = 0; q < rule.size(); ++q) {
        const Point x = 0.5 * (a + b) + 0.5 * rule.nodes[q] * (b - a);
        basis.values(x, h);
        basis.gradients(x, g);
        for (int i = 0; i < m; ++i) {
          hv(i) = h[i];
          dn(i) = g[i].dot(nrm);
        }
        G.noalias() += (rule.weights[q] * half_len) * dn * hv.transpose();
      }
    }
  } else {
    const PolygonRule rule = polygon_rule(polygon, 2 * basis.ell());
    Eigen::Matrix<double, 2, Eigen::Dynamic> grads(2, m);
    for (int q = 0; q < rule.size(); ++q) {
      basis.gradients(rule.points[q], g);
      for (int i = 0; i < m; ++i) grads.col(i) = g[i];
      G.noalias() += rule.weights[q] * grads.transpose() * grads;
    }
  }
  return 0.5 * (G + G.transpose());
}

Eigen::MatrixXd hgrad_rhs_matrix(std::span<const Point> polygon, const HarmonicBasis& basis, int nodes) {
  if (nodes <= 0) nodes = gauss_nodes_for_degree(basis.ell() + 1);
  const int m = basis.size();
  const int n = static_cast<int>(polygon.size());
  const EdgeRule& rule = gauss_legendre(nodes);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, n);
  std::vector<Vec2> g;
  for (int k = 0; k < n; ++k) {
    const int kn = (k + 1) % n;
    const Point& a = polygon[k];
    const Point& b = polygon[kn];
    const Vec2 nrm = outward_normal(a, b);
    const double half_len = 0.5 * (b - a).norm();
    for (int q = 0; q < rule.size(); ++q) {
      const double s = 0.5 * (rule.nodes[q] + 1.0);  // position along a -> b
      basis.gradients(a + s * (b - a), g);
      const double w = rule.weights[q] * half_len;
      for (int i = 0; i < m; ++i) {
        const double dn = g[i].dot(nrm);
        B(i, k) += w * (1.0 - s) * dn;
        B(i, kn) += w * s * dn;
      }
    }
  }
  return B;
}

HGradOperator hgrad_operator(std::span<const Point> polygon, const HarmonicBasis& basis) {
  HGradOperator op;
  op.gram = hgrad_gram(polygon, basis, GramMode::boundary);
  op.rhs = hgrad_rhs_matrix(polygon, basis);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.gram);
  const auto& lambda = eig.eigenvalues();
  const double lmax = lambda.maxCoeff();
  if (!(lmax > 0.0)) throw GeometryError("harmonic Gram matrix vanishes");
  op.gram_condition = lmax / std::max(lambda.minCoeff(), 0.0);

  if (lambda.minCoeff() >= 1e-12 * lmax) {
    op.coeffs = op.gram.llt().solve(op.rhs);
    return op;
  }
  op.pseudo_inverse = true;
  warn("harmonic Gram matrix nearly singular (lambda_min/lambda_max = " + std::to_string(lambda.minCoeff() / lmax) +
       ", ell = " + std::to_string(basis.ell()) + "); using pseudo-inverse");
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > 1e-12 * lmax) inv(i) = 1.0 / lambda(i);
  op.coeffs = eig.eigenvectors() * inv.asDiagonal() * (eig.eigenvectors().transpose() * op.rhs);
  return op;
}

Vec2 HGradProjection::evaluate(const HarmonicBasis& basis, const Point& p) const {
  const auto g = basis.gradients(p);
  Vec2 out = Vec2::Zero();
  for (std::size_t j = 0; j < g.size(); ++j) out += coeffs(static_cast<Eigen::Index>(j)) * g[j];
  return out;
}

HGradProjection hgrad_projection(const ElementDofs& dofs, const HarmonicBasis& basis) {
  if (dofs.values.size() != static_cast<Eigen::Index>(dofs.vertices.size()))
    throw std::invalid_argument("dof count differs from vertex count");
  const auto op = hgrad_operator(dofs.vertices, basis);
  HGradProjection out;
  out.coeffs = op.coeffs * dofs.values;
  out.gram = op.gram;
  out.pseudo_inverse = op.pseudo_inverse;
  return out;
}

}  // namespace sfvem
