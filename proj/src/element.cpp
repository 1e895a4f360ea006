#include "sfvem/element.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sfvem/harmonic.hpp"
#include "sfvem/log.hpp"
#include "sfvem/projectors.hpp"
#include "sfvem/quadrature.hpp"

namespace sfvem {

const char* to_string(Method m) { return m == Method::sfvem ? "sfvem" : "vem"; }

int ell_rule(int n_vertices, int offset) {
  if (n_vertices < 3) throw std::invalid_argument("element needs at least 3 vertices");
  const int minimal = std::max(0, (n_vertices - 3 + 1) / 2);
  return std::max(0, minimal + offset);
}

namespace {

bool is_isotropic(const Eigen::Matrix2d& K) { return K(0, 1) == 0.0 && K(1, 0) == 0.0 && K(0, 0) == K(1, 1); }

// Picks the quadrature degree for a term whose integrand has exact degree
// `needed`; records under-integration when a fixed degree is too low.
int pick_degree(int needed, const QuadratureOptions& quad, bool& under, const char* term) {
  needed = std::max(needed, 0);
  if (quad.volume_degree <= 0) return needed;
  if (needed > quad.volume_degree) {
    if (!under) warn(std::string(term) + " term needs quadrature degree " + std::to_string(needed) + ", configured " +
                     std::to_string(quad.volume_degree));
    under = true;
  }
  return quad.volume_degree;
}

// Scalar volume terms shared by both methods.
void fill_reaction_and_load(const ElementGeometry& geom, const ProblemSpec& spec, const QuadratureOptions& quad,
                            LocalElementMatrices& out) {
  const int n = geom.size();
  if (spec.has_reaction()) {
    const int deg = pick_degree(spec.gamma.degree(), quad, out.under_integrated, "reaction");
    const double gamma_int = polygon_rule(geom.vertices, deg).integrate([&](const Point& p) { return spec.gamma(p.x(), p.y()); });
    out.reaction = gamma_int * out.pi0.transpose() * out.pi0;
  } else {
    out.reaction = Eigen::MatrixXd::Zero(n, n);
  }
  if (!spec.f.is_zero()) {
    const int deg = pick_degree(spec.f.degree(), quad, out.under_integrated, "load");
    const double f_int = polygon_rule(geom.vertices, deg).integrate([&](const Point& p) { return spec.f(p.x(), p.y()); });
    out.load = f_int * out.pi0.transpose();
  } else {
    out.load = Eigen::VectorXd::Zero(n);
  }
}

}  // namespace

LocalElementMatrices sfvem_local(const ElementGeometry& geom, const ProblemSpec& spec, int ell,
                                 const QuadratureOptions& quad) {
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  const int n = geom.size();
  const HarmonicBasis basis(element_frame(geom), ell);
  const int m = basis.size();

  LocalElementMatrices out;
  out.ell = ell;
  out.nabla = nabla_matrix(geom);
  out.pi0 = pi0_row(geom);

  const HGradOperator op = hgrad_operator(geom.vertices, basis);
  out.hgrad = op.coeffs;
  out.pseudo_inverse = op.pseudo_inverse;

  // M_K = (K grad h_i, grad h_j)_E. The boundary Gram identity only holds for
  // the unweighted product, so anisotropic K goes through area quadrature.
  Eigen::MatrixXd MK;
  if (is_isotropic(spec.K)) {
    MK = spec.K(0, 0) * op.gram;
  } else {
    MK = Eigen::MatrixXd::Zero(m, m);
    const PolygonRule rule = polygon_rule(geom.vertices, 2 * ell);
    std::vector<Vec2> g;
    Eigen::Matrix<double, 2, Eigen::Dynamic> grads(2, m);
    for (int q = 0; q < rule.size(); ++q) {
      basis.gradients(rule.points[q], g);
      for (int i = 0; i < m; ++i) grads.col(i) = g[i];
      MK.noalias() += rule.weights[q] * grads.transpose() * spec.K * grads;
    }
    MK = 0.5 * (MK + MK.transpose());
  }
  out.diffusion = op.coeffs.transpose() * MK * op.coeffs;
  out.diffusion = 0.5 * (out.diffusion + out.diffusion.transpose());

  if (spec.has_advection()) {
    const int needed = std::max(spec.beta_x.degree(), spec.beta_y.degree()) + ell + 1;
    const int deg = pick_degree(needed, quad, out.under_integrated, "advection");
    const PolygonRule rule = polygon_rule(geom.vertices, deg);
    Eigen::RowVectorXd t = Eigen::RowVectorXd::Zero(m);  // int_E beta . grad h_k
    std::vector<Vec2> g;
    for (int q = 0; q < rule.size(); ++q) {
      const Point& p = rule.points[q];
      const Vec2 beta(spec.beta_x(p.x(), p.y()), spec.beta_y(p.x(), p.y()));
      basis.gradients(p, g);
      for (int k = 0; k < m; ++k) t(k) += rule.weights[q] * beta.dot(g[k]);
    }
    out.advection = out.pi0.transpose() * (t * op.coeffs);
  } else {
    out.advection = Eigen::MatrixXd::Zero(n, n);
  }

  fill_reaction_and_load(geom, spec, quad, out);
  return out;
}

LocalElementMatrices standard_vem_local(const ElementGeometry& geom, const ProblemSpec& spec, const VemOptions& options) {
  const int n = geom.size();
  LocalElementMatrices out;
  out.nabla = nabla_matrix(geom);
  out.pi0 = pi0_row(geom);

  // Gradients of Pi^nabla phi_j are constant: column j of G.
  const Eigen::Matrix<double, 2, Eigen::Dynamic> G = out.nabla.bottomRows<2>() / geom.diameter;
  const Eigen::MatrixXd consistency = geom.area * G.transpose() * spec.K * G;

  // D(i, a): monomial a of the frame evaluated at vertex i.
  const ScaledFrame frame = element_frame(geom);
  Eigen::MatrixXd D(n, 3);
  for (int i = 0; i < n; ++i) {
    const Point q = frame.to_local(geom.vertices[i]);
    D.row(i) << 1.0, q.x(), q.y();
  }
  const Eigen::MatrixXd remainder = Eigen::MatrixXd::Identity(n, n) - D * out.nabla;
  const double tau = options.stabilization_scale >= 0.0 ? options.stabilization_scale : 0.5 * spec.K.trace();
  out.diffusion = consistency + tau * remainder.transpose() * remainder;
  out.diffusion = 0.5 * (out.diffusion + out.diffusion.transpose());

  if (spec.has_advection()) {
    const int needed = std::max(spec.beta_x.degree(), spec.beta_y.degree());
    const int deg = pick_degree(needed, options.quadrature, out.under_integrated, "advection");
    const PolygonRule rule = polygon_rule(geom.vertices, deg);
    Vec2 beta_int = Vec2::Zero();
    for (int q = 0; q < rule.size(); ++q) {
      const Point& p = rule.points[q];
      beta_int += rule.weights[q] * Vec2(spec.beta_x(p.x(), p.y()), spec.beta_y(p.x(), p.y()));
    }
    out.advection = out.pi0.transpose() * (beta_int.transpose() * G);
  } else {
    out.advection = Eigen::MatrixXd::Zero(n, n);
  }

  fill_reaction_and_load(geom, spec, options.quadrature, out);
  return out;
}

}  // namespace sfvem
