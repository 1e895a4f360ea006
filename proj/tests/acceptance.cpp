// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "sfvem/analysis.hpp"
#include "sfvem/catalog.hpp"
#include "sfvem/generators.hpp"
#include "sfvem/log.hpp"
#include "sfvem/projectors.hpp"
#include "sfvem/quadrature.hpp"
#include "sfvem/rng.hpp"

using namespace sfvem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Tolerances, pinned.
constexpr double kProjectorTol = 1e-12;
constexpr double kKernelTol = 1e-11;
constexpr double kDetachedTol = 1e-8;
constexpr double kPatchTol = 1e-9;
constexpr double kQuadTol = 1e-12;

Outcome projector_exactness() {
  Outcome o;
  double worst_orth = 0.0, worst_p1 = 0.0, worst_gram = 0.0;
  Rng rng(2024);
  for (const auto& poly : catalog_polygons()) {
    const auto geom = ElementGeometry::from_vertices(poly.vertices);
    const int n = poly.n_vertices();
    Eigen::VectorXd lin(n), rnd(n);
    for (int i = 0; i < n; ++i) {
      lin(i) = 0.4 - 1.1 * poly.vertices[i].x() + 2.3 * poly.vertices[i].y();
      rnd(i) = rng.uniform(-1, 1);
    }
    // Energy projection of linear data.
    const Eigen::Vector3d c = nabla_matrix(geom) * lin;
    const auto frame = element_frame(geom);
    for (int i = 0; i < n; ++i) {
      const Point q = frame.to_local(poly.vertices[i]);
      worst_p1 = std::max(worst_p1, std::abs(c(0) + c(1) * q.x() + c(2) * q.y() - lin(i)) / lin.cwiseAbs().maxCoeff());
    }
    for (int ell = 0; ell <= 10; ++ell) {
      const HarmonicBasis basis(frame, ell);
      const auto op = hgrad_operator(poly.vertices, basis);
      const Eigen::MatrixXd Ga = hgrad_gram(poly.vertices, basis, GramMode::area);
      worst_gram = std::max(worst_gram, (op.gram - Ga).cwiseAbs().maxCoeff() / Ga.cwiseAbs().maxCoeff());
      // Orthogonality: (Pi grad v, grad h_i) through the area Gram matrix against
      // int v dh_i/dn with an over-resolved edge rule.
      const Eigen::MatrixXd B = hgrad_rhs_matrix(poly.vertices, basis, 24);
      for (const Eigen::VectorXd* v : {&lin, &rnd}) {
        const Eigen::VectorXd d = op.coeffs * *v;
        const Eigen::VectorXd r = Ga * d - B * *v;
        const double scale = Ga.norm() * d.norm() + (B * *v).norm();
        worst_orth = std::max(worst_orth, r.norm() / scale);
      }
      // Gradient of linear data is reproduced.
      const Eigen::VectorXd d = op.coeffs * lin;
      for (const auto& p : poly.vertices) {
        const auto g = basis.gradients(p);
        Vec2 s = Vec2::Zero();
        for (int j = 0; j < basis.size(); ++j) s += d(j) * g[j];
        worst_p1 = std::max(worst_p1, (s - Vec2(-1.1, 2.3)).norm() / Vec2(-1.1, 2.3).norm());
      }
    }
  }
  o.pass = worst_orth <= kProjectorTol && worst_p1 <= kProjectorTol && worst_gram <= kProjectorTol;
  o.detail = "orthogonality " + fmt("%.2e", worst_orth) + ", P1 reproduction " + fmt("%.2e", worst_p1) +
             ", Gram boundary/area " + fmt("%.2e", worst_gram);
  return o;
}

Outcome spectral_audit_suite() {
  Outcome o;
  double worst_kernel = 0.0, worst_detached = 1.0;
  for (const auto& poly : catalog_polygons()) {
    const auto a = spectral_audit(poly, ell_rule(poly.n_vertices()));
    worst_kernel = std::max(worst_kernel, a.sigma_min / a.sigma_max);
    worst_detached = std::min(worst_detached, a.sigma_r_over_max());
  }
  // Reference (N_E, ell_E) pairs for the minimal degree.
  const int pairs[][2] = {{3, 0},  {4, 1},  {5, 1},  {6, 2},  {7, 2},  {8, 3},  {9, 3},  {10, 4}, {11, 4},
                          {12, 5}, {13, 5}, {14, 6}, {15, 6}, {16, 7}, {17, 7}, {18, 8}};
  int mismatched = 0;
  for (const auto& p : pairs) mismatched += ell_rule(p[0]) != p[1];
  o.pass = worst_kernel <= kKernelTol && worst_detached >= kDetachedTol && mismatched == 0;
  o.detail = "max sigma_min/sigma_max " + fmt("%.2e", worst_kernel) + ", min sigma_r/sigma_max " +
             fmt("%.2e", worst_detached) + ", ell pairs mismatched " + std::to_string(mismatched);
  return o;
}

Outcome patch_test() {
  Outcome o;
  const Poly2 u = 0.3 + 1.7 * Poly2::x() - 0.6 * Poly2::y();
  auto spec = manufactured_problem(u, rotated_anisotropic_tensor(std::numbers::pi / 6, 1e-9));
  spec.dirichlet = u;
  const auto mesh = generate_distorted_grid(8, 0.3, 42);
  double worst[2] = {0.0, 0.0};
  for (Method m : {Method::sfvem, Method::vem}) {
    AssemblyOptions opt;
    opt.method = m;
    const auto sol = solve(assemble(mesh, spec, opt));
    double& w = worst[m == Method::sfvem ? 0 : 1];
    for (int v = 0; v < mesh.num_vertices(); ++v)
      w = std::max(w, std::abs(sol.values(v) - u(mesh.vertex(v).x(), mesh.vertex(v).y())));
  }
  o.pass = worst[0] <= kPatchTol && worst[1] <= kPatchTol;
  o.detail = "max nodal error SFVEM " + fmt("%.2e", worst[0]) + ", VEM " + fmt("%.2e", worst[1]);
  return o;
}

Outcome convergence_rates() {
  Outcome o;
  const auto spec = build_benchmark_coefficients(0.9, 0.3, std::numbers::pi / 6);
  const std::vector<int> levels = {8, 16, 32, 64};
  const auto records =
      convergence_study(levels, [](int n) { return generate_distorted_grid(n, 0.3, 42); }, spec);
  const auto s = fit_rates(records, Method::sfvem);
  const auto v = fit_rates(records, Method::vem);
  o.pass = s.alpha1 >= 0.8 && s.alpha1 <= 1.3 && s.alpha0 >= 1.6 && s.alpha0 <= 2.4 && v.alpha1 >= 0.7;
  o.detail = "SFVEM alpha0 " + fmt("%.3f", s.alpha0) + " alpha1 " + fmt("%.3f", s.alpha1) + ", VEM alpha0 " +
             fmt("%.3f", v.alpha0) + " alpha1 " + fmt("%.3f", v.alpha1) + ", VEM/SFVEM e0 ratio on finest " +
             fmt("%.2f", records.back().ratio_e0());
  return o;
}

Outcome quadrature_oracle() {
  Outcome o;
  double worst = 0.0;
  for (const auto& poly : catalog_polygons()) {
    for (int d = 0; d <= 20; ++d) {
      const auto rule = polygon_rule(poly.vertices, d);
      for (int a = 0; a <= d; ++a) {
        const int b = d - a;
        const double exact = static_cast<double>(testing::monomial_integral(poly.vertices, a, b));
        const double approx = rule.integrate([&](const Point& p) { return std::pow(p.x(), a) * std::pow(p.y(), b); });
        worst = std::max(worst, std::abs(approx - exact) / std::max(1.0, std::abs(exact)));
      }
    }
  }
  o.pass = worst <= kQuadTol;
  o.detail = "max relative deviation " + fmt("%.2e", worst) + " over degrees 0..20";
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "sfvem_acceptance_determinism";
  fs::remove_all(base);
  std::string csv[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path dir = base / std::to_string(k);
    std::ostringstream out, err;
    const int code = cli::run_cli({"sfvem", "convergence", "--generator", "voronoi", "--levels", "4,8", "--seed", "11",
                                   "--out", dir.string()},
                                  out, err);
    if (code != 0) {
      o.pass = false;
      o.detail = "convergence run exited with " + std::to_string(code) + ": " + err.str();
      return o;
    }
    std::ifstream in(dir / "convergence.csv", std::ios::binary);
    csv[k].assign(std::istreambuf_iterator<char>(in), {});
  }
  o.pass = !csv[0].empty() && csv[0] == csv[1];
  o.detail = std::to_string(csv[0].size()) + " bytes, " + (o.pass ? "identical" : "different");
  return o;
}

}  // namespace

int main() {
  set_warning_handler([](const std::string& m) { std::fprintf(stderr, "warning: %s\n", m.c_str()); });
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"projector exactness (catalog, ell <= 10)", projector_exactness},
      {"spectral stability audit", spectral_audit_suite},
      {"patch test, anisotropic K, distorted 8x8 grid", patch_test},
      {"benchmark convergence rates, grids n = 8..64", convergence_rates},
      {"polygon quadrature vs divergence-theorem oracle", quadrature_oracle},
      {"determinism of convergence CSV", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
