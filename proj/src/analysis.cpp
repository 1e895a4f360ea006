#include "sfvem/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "sfvem/element.hpp"
#include "sfvem/errors.hpp"
#include "sfvem/projectors.hpp"
#include "sfvem/quadrature.hpp"
#include "sfvem/svd.hpp"

namespace sfvem {

bool SpectralAudit::compliant() const { return 2 * ell + 2 >= n_vertices - 1; }

SpectralAudit spectral_audit(const CatalogPolygon& polygon, int ell) {
  const auto geom = ElementGeometry::from_vertices(polygon.vertices);
  ProblemSpec laplace;
  const auto local = sfvem_local(geom, laplace, ell);

  SpectralAudit a;
  a.name = polygon.name;
  a.n_vertices = polygon.n_vertices();
  a.ell = ell;
  a.singular_values = jacobi_singular_values(local.diffusion);
  const auto& sv = a.singular_values;
  a.sigma_max = sv(0);
  a.sigma_min = sv(sv.size() - 1);
  a.sigma_r = sv(sv.size() - 2);
  return a;
}

namespace {

void put(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  out << buf;
}

}  // namespace

void write_audit_csv_header(std::ostream& out) { out << "name,N_E,ell_E,sigma_min,sigma_r,sigma_max,sigma_r_over_max\n"; }

void write_audit_csv_row(std::ostream& out, const SpectralAudit& a) {
  out << a.name << ',' << a.n_vertices << ',' << a.ell << ',';
  put(out, a.sigma_min);
  out << ',';
  put(out, a.sigma_r);
  out << ',';
  put(out, a.sigma_max);
  out << ',';
  put(out, a.sigma_r_over_max());
  out << '\n';
}

ErrorNorms error_norms(const PolyMesh& mesh, const DiscreteSolution& solution, const ProblemSpec& spec,
                       const QuadratureOptions& quad) {
  if (!spec.exact_u) throw std::invalid_argument("error norms need an exact solution");
  if (solution.values.size() != mesh.num_vertices()) throw std::invalid_argument("solution does not match the mesh");
  const Poly2& u = *spec.exact_u;
  const Poly2 ux = u.dx();
  const Poly2 uy = u.dy();
  const int udeg = std::max(u.degree(), 0);
  const int deg0 = quad.volume_degree > 0 ? quad.volume_degree : 2 * udeg;
  const int deg1 = quad.volume_degree > 0 ? quad.volume_degree : std::max(2 * (udeg - 1), 0);

  double num0 = 0.0, den0 = 0.0, num1 = 0.0, den1 = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto geom = ElementGeometry::from_vertices(mesh.cell_points(c));
    const auto cell = mesh.cell(c);
    Eigen::VectorXd dofs(geom.size());
    for (int i = 0; i < geom.size(); ++i) dofs(i) = solution.values(cell[i]);
    NablaProjection proj;
    proj.frame = element_frame(geom);
    proj.coeffs = nabla_matrix(geom) * dofs;
    const Vec2 g = proj.gradient();

    const PolygonRule r0 = polygon_rule(geom.vertices, deg0);
    for (int q = 0; q < r0.size(); ++q) {
      const Point& p = r0.points[q];
      const double uv = u(p.x(), p.y());
      const double diff = uv - proj(p);
      num0 += r0.weights[q] * diff * diff;
      den0 += r0.weights[q] * uv * uv;
    }
    const PolygonRule r1 = deg1 == deg0 ? r0 : polygon_rule(geom.vertices, deg1);
    for (int q = 0; q < r1.size(); ++q) {
      const Point& p = r1.points[q];
      const Vec2 gu(ux(p.x(), p.y()), uy(p.x(), p.y()));
      const Vec2 d = gu - g;
      num1 += r1.weights[q] * d.dot(spec.K * d);
      den1 += r1.weights[q] * gu.dot(spec.K * gu);
    }
  }
  ErrorNorms out;
  if (den0 > 0.0 && den1 > 0.0) {
    out.e0 = std::sqrt(std::max(num0, 0.0) / den0);
    out.e1 = std::sqrt(std::max(num1, 0.0) / den1);
  } else {
    out.unnormalized = true;
    out.e0 = den0 > 0.0 ? std::sqrt(num0 / den0) : std::sqrt(std::max(num0, 0.0));
    out.e1 = den1 > 0.0 ? std::sqrt(num1 / den1) : std::sqrt(std::max(num1, 0.0));
  }
  return out;
}

double fit_slope(std::span<const double> h, std::span<const double> error) {
  if (h.size() != error.size()) throw std::invalid_argument("fit_slope: size mismatch");
  if (h.size() < 2) throw std::invalid_argument("rate fitting needs at least two refinement levels");
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(error[i] > 0.0)) throw std::invalid_argument("rate fitting needs positive h and errors");
    const double x = std::log(h[i]);
    const double y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw std::invalid_argument("rate fitting needs distinct mesh sizes");
  return (n * sxy - sx * sy) / denom;
}

RateFit fit_rates(std::span<const ConvergenceRecord> records, Method method) {
  std::vector<double> h, e0, e1;
  for (const auto& r : records) {
    h.push_back(r.h);
    e0.push_back(method == Method::sfvem ? r.e0_sfvem : r.e0_vem);
    e1.push_back(method == Method::sfvem ? r.e1_sfvem : r.e1_vem);
  }
  return {fit_slope(h, e0), fit_slope(h, e1)};
}

std::vector<ConvergenceRecord> convergence_study(std::span<const int> levels,
                                                 const std::function<PolyMesh(int)>& mesh_for,
                                                 const ProblemSpec& spec, const ConvergenceOptions& options,
                                                 const std::function<void(const ConvergenceRecord&)>& on_level) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ConvergenceRecord> records;
  for (int level : levels) {
    const PolyMesh mesh = mesh_for(level);
    ConvergenceRecord rec;
    rec.level = level;
    rec.h = quality_report(mesh).h;
    rec.ndof = mesh.num_vertices() - static_cast<int>(mesh.boundary_vertices().size());
    rec.e0_sfvem = rec.e1_sfvem = rec.e0_vem = rec.e1_vem = nan;

    AssemblyOptions opts;
    opts.ell_offset = options.ell_offset;
    opts.quadrature = options.quadrature;
    if (options.run_sfvem) {
      opts.method = Method::sfvem;
      const auto e = error_norms(mesh, solve(assemble(mesh, spec, opts)), spec, options.quadrature);
      rec.e0_sfvem = e.e0;
      rec.e1_sfvem = e.e1;
    }
    if (options.run_vem) {
      opts.method = Method::vem;
      const auto e = error_norms(mesh, solve(assemble(mesh, spec, opts)), spec, options.quadrature);
      rec.e0_vem = e.e0;
      rec.e1_vem = e.e1;
    }
    records.push_back(rec);
    if (on_level) on_level(rec);
  }
  return records;
}

void write_convergence_csv_header(std::ostream& out) {
  out << "level,h,ndof,e0_sfvem,e1_sfvem,e0_vem,e1_vem,ratio_e0,ratio_e1\n";
}

void write_convergence_csv_row(std::ostream& out, const ConvergenceRecord& r) {
  out << r.level << ',';
  put(out, r.h);
  out << ',' << r.ndof;
  for (double v : {r.e0_sfvem, r.e1_sfvem, r.e0_vem, r.e1_vem, r.ratio_e0(), r.ratio_e1()}) {
    out << ',';
    put(out, v);
  }
  out << '\n';
}

}  // namespace sfvem
