#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plot.hpp"
#include "sfvem/analysis.hpp"
#include "sfvem/catalog.hpp"
#include "sfvem/errors.hpp"
#include "sfvem/generators.hpp"
#include "sfvem/log.hpp"
#include "sfvem/system.hpp"

namespace sfvem::cli {
namespace {

std::string sci(double v, int digits = 4) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  return f;
}

PolyMesh mesh_for(const RunConfig& c) {
  if (c.mesh_file) return read_mesh(*c.mesh_file);
  return generated_mesh(c, c.generator == "voronoi" ? 0 : c.n);
}

// Warnings go to the command's error stream while it runs.
class WarningRoute {
 public:
  explicit WarningRoute(std::ostream& err) {
    set_warning_handler([&err](const std::string& m) { err << "warning: " << m << '\n'; });
  }
  ~WarningRoute() {
    set_warning_handler([](const std::string& m) { std::clog << "warning: " << m << '\n'; });
  }
  WarningRoute(const WarningRoute&) = delete;
  WarningRoute& operator=(const WarningRoute&) = delete;
};

}  // namespace

PolyMesh generated_mesh(const RunConfig& c, int level) {
  if (c.generator == "grid") return generate_distorted_grid(level > 0 ? level : c.n, c.effective_delta(), c.seed);
  if (c.generator == "voronoi") {
    const int seeds = level > 0 ? level * level : c.seeds;
    return generate_voronoi(seeds, c.lloyd, c.seed, c.effective_delta());
  }
  throw std::invalid_argument("unknown generator '" + c.generator + "'");
}

ProblemSpec make_problem(const RunConfig& c) {
  if (c.problem == "benchmark") return build_benchmark_coefficients(c.r1, c.r2, c.theta);
  if (c.problem == "poisson") return poisson_unit_load();
  if (c.problem == "bubble") {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    return manufactured_problem(x * (1.0 - x) * y * (1.0 - y), Eigen::Matrix2d::Identity());
  }
  throw std::invalid_argument("unknown problem '" + c.problem + "'");
}

std::vector<Point> read_polygon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open polygon file " + path.string());
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x)) continue;
    std::string rest;
    if (!(ls >> y) || (ls >> rest)) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 'x y'");
    pts.emplace_back(x, y);
  }
  if (pts.size() < 3) throw ParseError(path.string() + ": a polygon needs at least 3 vertices");
  if (signed_area(pts) < 0.0) std::reverse(pts.begin(), pts.end());
  if (!is_simple(pts)) throw GeometryError(path.string() + ": polygon is not simple");
  return pts;
}

int cmd_generate_mesh(const RunConfig& c, std::ostream& out, std::ostream&) {
  const PolyMesh mesh = generated_mesh(c, 0);
  auto f = open_output(c.out, "mesh.vem");
  print_mesh(f, mesh);
  const auto q = quality_report(mesh);
  out << "wrote " << (c.out / "mesh.vem").string() << ": " << mesh.num_vertices() << " vertices, " << mesh.num_cells()
      << " cells, h = " << sci(q.h) << ", min edge/diameter = " << sci(q.kappa) << '\n';
  return 0;
}

int cmd_check_polygon(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<CatalogPolygon> polys;
  if (c.polygon_file)
    polys.push_back({c.polygon_file->stem().string(), read_polygon(*c.polygon_file)});
  else
    polys = catalog_polygons();

  auto f = open_output(c.out, "audit.csv");
  write_audit_csv_header(f);
  int failures = 0;
  for (const auto& p : polys) {
    const auto a = spectral_audit(p, ell_rule(p.n_vertices(), c.ell_offset));
    write_audit_csv_row(f, a);
    const bool ok = a.sigma_r_over_max() >= 1e-8 && a.sigma_min <= 1e-11 * a.sigma_max;
    std::string status = ok ? "ok" : "FAIL";
    if (!a.compliant()) {
      status = "exploratory";
      err << "warning: " << p.name << " (N_E = " << a.n_vertices << ") with ell = " << a.ell
          << " violates 2 ell + 2 >= N_E - 1; observed sigma_r/sigma_max = " << sci(a.sigma_r_over_max()) << '\n';
    } else if (!ok) {
      ++failures;
    }
    out << p.name << " N_E=" << a.n_vertices << " ell=" << a.ell << " sigma_r=" << sci(a.sigma_r)
        << " sigma_r/sigma_max=" << sci(a.sigma_r_over_max()) << ' ' << status << '\n';
  }
  out << "wrote " << (c.out / "audit.csv").string() << '\n';
  if (failures > 0) {
    err << failures << " compliant polygon(s) failed the stability audit\n";
    return static_cast<int>(ExitCode::audit_failure);
  }
  return 0;
}

int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream&) {
  const PolyMesh mesh = mesh_for(c);
  const ProblemSpec spec = make_problem(c);
  spec.validate();
  const std::string method = c.method.empty() ? "sfvem" : c.method;
  std::vector<Method> methods;
  if (method == "sfvem" || method == "both") methods.push_back(Method::sfvem);
  if (method == "vem" || method == "both") methods.push_back(Method::vem);

  for (Method m : methods) {
    AssemblyOptions opt;
    opt.method = m;
    opt.ell_offset = c.ell_offset;
    opt.quadrature.volume_degree = c.quad_degree;
    const auto sol = solve(assemble(mesh, spec, opt));
    const std::string name = methods.size() > 1 ? std::string("solution_") + to_string(m) + ".csv" : "solution.csv";
    auto f = open_output(c.out, name);
    write_solution_csv(f, mesh, sol);
    out << to_string(m) << ": " << mesh.num_vertices() << " vertices, residual " << sci(sol.residual, 3);
    if (spec.exact_u) {
      const auto e = error_norms(mesh, sol, spec, opt.quadrature);
      out << ", e0 " << sci(e.e0) << ", e1 " << sci(e.e1);
    }
    out << ", wrote " << (c.out / name).string() << '\n';
  }
  return 0;
}

int cmd_convergence(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.mesh_file) throw std::invalid_argument("convergence generates its meshes; --mesh is not accepted");
  if (c.levels.empty()) throw std::invalid_argument("--levels is empty");
  const ProblemSpec spec = make_problem(c);
  spec.validate();
  if (!spec.exact_u) throw std::invalid_argument("problem '" + c.problem + "' has no exact solution");

  const std::string method = c.method.empty() ? "both" : c.method;
  ConvergenceOptions opt;
  opt.run_sfvem = method == "sfvem" || method == "both";
  opt.run_vem = method == "vem" || method == "both";
  opt.ell_offset = c.ell_offset;
  opt.quadrature.volume_degree = c.quad_degree;

  auto csv = open_output(c.out, "convergence.csv");
  write_convergence_csv_header(csv);
  csv.flush();
  const auto records = convergence_study(
      c.levels, [&](int level) { return generated_mesh(c, level); }, spec, opt,
      [&](const ConvergenceRecord& r) {
        write_convergence_csv_row(csv, r);
        csv.flush();
        out << "level " << r.level << ": h " << sci(r.h) << ", ndof " << r.ndof;
        if (opt.run_sfvem) out << ", sfvem e0 " << sci(r.e0_sfvem) << " e1 " << sci(r.e1_sfvem);
        if (opt.run_vem) out << ", vem e0 " << sci(r.e0_vem) << " e1 " << sci(r.e1_vem);
        out << '\n';
      });
  out << "wrote " << (c.out / "convergence.csv").string() << '\n';

  std::vector<double> h;
  for (const auto& r : records) h.push_back(r.h);
  auto column = [&](double ConvergenceRecord::*field) {
    std::vector<double> v;
    for (const auto& r : records) v.push_back(r.*field);
    return v;
  };
  std::vector<PlotSeries> series;
  const bool fit = records.size() >= 2;
  if (!fit) out << "single level: rate fitting skipped\n";
  auto add = [&](Method m, double ConvergenceRecord::*e0, double ConvergenceRecord::*e1, bool dashed) {
    std::string a0, a1;
    if (fit) {
      const auto rates = fit_rates(records, m);
      out << to_string(m) << " rates: alpha0 = " << sci(rates.alpha0, 3) << ", alpha1 = " << sci(rates.alpha1, 3)
          << '\n';
      char buf[64];
      std::snprintf(buf, sizeof buf, " (slope %.2f)", rates.alpha0);
      a0 = buf;
      std::snprintf(buf, sizeof buf, " (slope %.2f)", rates.alpha1);
      a1 = buf;
    }
    const std::string name = m == Method::sfvem ? "SFVEM" : "VEM";
    series.push_back({name + " e0" + a0, h, column(e0), dashed});
    series.push_back({name + " e1" + a1, h, column(e1), dashed});
  };
  if (opt.run_sfvem) add(Method::sfvem, &ConvergenceRecord::e0_sfvem, &ConvergenceRecord::e1_sfvem, false);
  if (opt.run_vem) add(Method::vem, &ConvergenceRecord::e0_vem, &ConvergenceRecord::e1_vem, true);
  if (opt.run_sfvem && opt.run_vem)
    for (const auto& r : records)
      out << "level " << r.level << ": VEM/SFVEM ratio e0 " << sci(r.ratio_e0(), 3) << ", e1 " << sci(r.ratio_e1(), 3)
          << '\n';

  auto svg = open_output(c.out, "convergence.svg");
  write_loglog_svg(svg, "Relative errors (" + c.generator + ", " + c.problem + ")", "h", series);
  out << "wrote " << (c.out / "convergence.svg").string() << '\n';
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app("Stabilization-free and standard virtual element experiments on polygonal meshes", "sfvem");
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "Read options from a key=value file (command-line flags win)");

  std::string mesh_file, polygon_file, out_dir = ".";
  double delta = -1.0;
  app.add_option("--mesh", mesh_file, "Mesh file (vem-mesh format)");
  app.add_option("--generator", c.generator, "Mesh generator")->check(CLI::IsMember({"grid", "voronoi"}));
  app.add_option("--n", c.n, "Grid cells per side")->check(CLI::PositiveNumber);
  app.add_option("--seeds", c.seeds, "Voronoi seed count")->check(CLI::PositiveNumber);
  app.add_option("--lloyd", c.lloyd, "Lloyd relaxation sweeps")->check(CLI::NonNegativeNumber);
  app.add_option("--delta", delta, "Distortion amplitude in [0, 0.5); default 0.3 grid, 0.25 voronoi");
  app.add_option("--seed", c.seed, "RNG seed");
  app.add_option("--polygon", polygon_file, "Polygon file for check-polygon (one 'x y' per line)");
  app.add_option("--problem", c.problem, "Test problem")->check(CLI::IsMember({"benchmark", "poisson", "bubble"}));
  app.add_option("--method", c.method, "Method")->check(CLI::IsMember({"sfvem", "vem", "both"}));
  app.add_option("--ell-offset", c.ell_offset, "Added to the minimal harmonic degree on every element");
  app.add_option("--theta", c.theta, "Rotation angle of the diffusion tensor");
  app.add_option("--r1", c.r1, "Benchmark parameter R1");
  app.add_option("--r2", c.r2, "Benchmark parameter R2");
  app.add_option("--quad-degree", c.quad_degree, "Fixed volume quadrature degree (0 = exact per term)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--levels", c.levels, "Refinement levels (grid n, or sqrt of the Voronoi seed count)")
      ->delimiter(',');
  app.add_option("--out", out_dir, "Output directory");

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"generate-mesh", "Generate a mesh and write mesh.vem"},
                      {"check-polygon", "Spectral stability audit of the polygon catalog or --polygon"},
                      {"solve", "Assemble and solve once; writes solution.csv"},
                      {"convergence", "Error study over --levels; writes convergence.csv and convergence.svg"},
                      {"compare", "convergence with both methods"}};
  for (const auto& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::input_error);
  }

  c.command = app.get_subcommands().front()->get_name();
  if (!mesh_file.empty()) c.mesh_file = mesh_file;
  if (!polygon_file.empty()) c.polygon_file = polygon_file;
  if (delta >= 0.0) c.delta = delta;
  c.out = out_dir;
  if (c.command == "compare") c.method = "both";

  WarningRoute route(err);
  try {
    if (c.command == "generate-mesh") return cmd_generate_mesh(c, out, err);
    if (c.command == "check-polygon") return cmd_check_polygon(c, out, err);
    if (c.command == "solve") return cmd_solve(c, out, err);
    return cmd_convergence(c, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::input_error);
  }
}

}  // namespace sfvem::cli
