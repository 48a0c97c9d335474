#include "svlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "svlab/error.hpp"
#include "svlab/geometry.hpp"
#include "svlab/infsup.hpp"
#include "svlab/mesh.hpp"
#include "svlab/mesh_io.hpp"
#include "svlab/stokes.hpp"

namespace svlab::cli {
namespace {

const std::map<std::string, SplitStrategy> kStrategies{{"barycenter", SplitStrategy::Barycenter},
                                                       {"incenter", SplitStrategy::Incenter}};
const std::map<std::string, Diagonal> kDiagonals{{"rightup", Diagonal::RightUp}, {"leftup", Diagonal::LeftUp}};
const std::map<std::string, ElementPair> kPairs{{"sv", ElementPair::SV_P2P1d}, {"p2p0", ElementPair::P2P0}};

std::string fmt(double v) { return format_double(v); }

// Deterministic header: subcommand and every resolved option value.
void print_header(std::ostream& err, const CLI::App& sub) {
  err << "# svlab " << kVersion << ' ' << sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help") continue;
    std::string value;
    for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    if (value.empty()) value = opt->get_default_str();
    if (value.empty()) continue;
    std::string name = opt->get_name();
    name.erase(0, name.find_first_not_of('-'));
    err << ' ' << name << '=' << value;
  }
  err << '\n';
}

void emit_mesh(const Mesh2D& mesh, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_mesh(out, mesh);
  } else {
    write_mesh(mesh, path);
  }
}

Mesh2D load_mesh(const std::string& path) {
  if (path == "-") return read_mesh(std::cin);
  return read_mesh(std::filesystem::path(path));
}

struct GenerateArgs {
  std::size_t unit_square = 0;
  std::size_t shishkin = 0;
  double eps = 0.01;
  std::optional<double> tau;
  std::string diagonal = "rightup";
  std::string out;
};

struct RefineArgs {
  std::string in;
  std::string strategy;
  int levels = 1;
  std::string out;
};

struct QualityArgs {
  std::string in;
  double delta = 0.1;
};

struct InfSupArgs {
  std::size_t n0 = 2;
  std::string strategy = "barycenter";
  int levels = 3;
  std::string pair = "sv";
  bool iterative = false;
  std::string diagonal = "rightup";
  std::string triplets;
};

struct LocalArgs {
  std::vector<double> coords;
  std::string strategy = "incenter";
};

struct StokesArgs {
  std::size_t N = 16;
  std::size_t unit_square = 0;
  std::string mesh;
  double eps = 0.01;
  std::optional<double> tau;
  double nu = 1.0;
  std::string strategy = "incenter";
  int quad_degree = 10;
};

struct ConvergenceArgs {
  std::vector<std::size_t> N_list{8, 16, 32, 64};
  double eps = 0.01;
  std::optional<double> tau;
  double nu = 1.0;
  std::string strategies = "both";
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.unit_square > 0) {
    emit_mesh(generate_unit_square_mesh(a.unit_square, kDiagonals.at(a.diagonal)), a.out, out);
  } else {
    emit_mesh(generate_shishkin_mesh(a.shishkin, a.tau.value_or(default_tau(a.eps))), a.out, out);
  }
  return 0;
}

int do_refine(const RefineArgs& a, std::ostream& out) {
  Mesh2D mesh = load_mesh(a.in);
  for (int k = 0; k < a.levels; ++k) mesh = clough_tocher_refine(mesh, kStrategies.at(a.strategy));
  emit_mesh(mesh, a.out, out);
  return 0;
}

int do_quality(const QualityArgs& a, std::ostream& out) {
  const Mesh2D mesh = load_mesh(a.in);
  std::ostringstream csv;
  csv << "cell_id,h1,h2,h3,alpha_max,aspect,lac_pass,alpha_min\n";
  double max_alpha = 0.0;
  double max_aspect = 0.0;
  double min_alpha = std::numbers::pi;
  bool all_pass = true;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    TriangleMetrics m;
    try {
      m = analyze_triangle(mesh.cell_points(c));
    } catch (const GeometryError& e) {
      throw GeometryError("cell " + std::to_string(c) + ": " + e.what());
    }
    const bool pass = m.alpha[2] < std::numbers::pi - a.delta;
    csv << c << ',' << fmt(m.h[0]) << ',' << fmt(m.h[1]) << ',' << fmt(m.h[2]) << ',' << fmt(m.alpha[2]) << ','
        << fmt(m.aspect) << ',' << (pass ? 1 : 0) << ',' << fmt(m.alpha[0]) << '\n';
    max_alpha = std::max(max_alpha, m.alpha[2]);
    max_aspect = std::max(max_aspect, m.aspect);
    min_alpha = std::min(min_alpha, m.alpha[0]);
    all_pass = all_pass && pass;
  }
  csv << "summary,,,," << fmt(max_alpha) << ',' << fmt(max_aspect) << ',' << (all_pass ? 1 : 0) << ','
      << fmt(min_alpha) << '\n';
  out << csv.str();
  return 0;
}

int do_infsup(const InfSupArgs& a, std::ostream& out) {
  InfSupOptions options;
  options.iterative = a.iterative;
  const InfSupReport report = refinement_study(a.n0, kStrategies.at(a.strategy), a.levels, kPairs.at(a.pair), options,
                                               kDiagonals.at(a.diagonal));
  out << "level,beta,aspect,rate\n";
  for (const auto& row : report.rows) {
    out << row.level << ',' << fmt(row.beta) << ',' << fmt(row.aspect) << ',';
    if (row.rate) out << fmt(*row.rate);
    out << '\n';
  }
  if (!a.triplets.empty()) {
    Mesh2D mesh = generate_unit_square_mesh(a.n0, kDiagonals.at(a.diagonal));
    for (int k = 0; k < a.levels; ++k) mesh = clough_tocher_refine(mesh, kStrategies.at(a.strategy));
    const InfSupProblem problem = build_infsup_problem(mesh, kPairs.at(a.pair));
    const std::pair<const char*, const SparseMat*> parts[] = {{"K", &problem.K}, {"B", &problem.B}, {"M", &problem.M}};
    for (const auto& [name, matrix] : parts) {
      const std::string path = a.triplets + "_" + name + ".txt";
      std::ofstream file(path);
      if (!file) throw DomainError("cannot write " + path);
      write_triplets(file, *matrix);
    }
  }
  return 0;
}

int do_local(const LocalArgs& a, std::ostream& out) {
  const Triangle t{Point2{a.coords[0], a.coords[1]}, Point2{a.coords[2], a.coords[3]},
                   Point2{a.coords[4], a.coords[5]}};
  const LocalStabilityResult r = local_infsup(t, kStrategies.at(a.strategy));
  out << "beta_local,aspect\n" << fmt(r.beta_local) << ',' << fmt(r.aspect) << '\n';
  return 0;
}

void write_report_header(std::ostream& out) {
  out << "dofs_v,dofs_p,l2_vel,h1_vel,l2_prs,linf_div,h1_norm,solver_residual,max_aspect\n";
}

int do_stokes(const StokesArgs& a, std::ostream& out) {
  Mesh2D mesh = [&] {
    if (!a.mesh.empty()) return load_mesh(a.mesh);
    const Mesh2D parent = a.unit_square > 0 ? generate_unit_square_mesh(a.unit_square)
                                            : generate_shishkin_mesh(a.N, a.tau.value_or(default_tau(a.eps)));
    return clough_tocher_refine(parent, kStrategies.at(a.strategy));
  }();
  StokesOptions options;
  options.quadrature_degree = a.quad_degree;
  const SolveReport r = solve_stokes(mesh, ManufacturedSolution(a.eps, a.nu), options).report;
  write_report_header(out);
  out << r.dofs_v << ',' << r.dofs_p << ',' << fmt(r.l2_vel) << ',' << fmt(r.h1_vel) << ',' << fmt(r.l2_prs) << ','
      << fmt(r.linf_div) << ',' << fmt(r.h1_norm) << ',' << fmt(r.solver_residual) << ','
      << fmt(max_aspect_ratio(mesh)) << '\n';
  return 0;
}

int do_convergence(const ConvergenceArgs& a, std::ostream& out) {
  std::vector<SplitStrategy> strategies;
  if (a.strategies == "both" || a.strategies == "barycenter") strategies.push_back(SplitStrategy::Barycenter);
  if (a.strategies == "both" || a.strategies == "incenter") strategies.push_back(SplitStrategy::Incenter);
  const auto rows = compare_strategies(a.N_list, a.eps, a.tau.value_or(default_tau(a.eps)), a.nu, strategies);
  out << "N,strategy,dofs_v,dofs_p,l2_vel,h1_vel,l2_prs,linf_div,max_aspect\n";
  for (const auto& row : rows) {
    const SolveReport& r = row.report;
    out << row.N << ',' << to_string(row.strategy) << ',' << r.dofs_v << ',' << r.dofs_p << ',' << fmt(r.l2_vel)
        << ',' << fmt(r.h1_vel) << ',' << fmt(r.l2_prs) << ',' << fmt(r.linf_div) << ',' << fmt(row.max_aspect)
        << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clough-Tocher refinement, inf-sup and Scott-Vogelius Stokes experiments", "svlab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  const auto positive = CLI::PositiveNumber;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a unit-square or Shishkin mesh");
  auto* g_us = generate->add_option("--unit-square", gen.unit_square, "n x n squares, each split in two")
                   ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  auto* g_sh = generate->add_option("--shishkin", gen.shishkin, "N x N Shishkin grid (N even)")
                   ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  g_us->excludes(g_sh);
  auto* g_tau = generate->add_option("--tau", gen.tau, "layer width (default 3 eps log10(1/eps))")->check(positive);
  generate->add_option("--eps", gen.eps, "boundary-layer parameter")->capture_default_str()->check(positive);
  auto* g_diag = generate->add_option("--diagonal", gen.diagonal, "rightup | leftup")
                     ->check(CLI::IsMember(kDiagonals))
                     ->capture_default_str();
  g_tau->excludes(g_us);
  g_diag->excludes(g_sh);
  generate->add_option("--out", gen.out, "output path (default stdout)");

  RefineArgs ref;
  auto* refine = app.add_subcommand("refine", "Clough-Tocher refinement of a mesh file");
  refine->add_option("--in", ref.in, "input mesh ('-' for stdin)")->required();
  refine->add_option("--strategy", ref.strategy, "barycenter | incenter")
      ->check(CLI::IsMember(kStrategies))
      ->required();
  refine->add_option("--levels", ref.levels, "number of refinements")
      ->capture_default_str()
      ->check(CLI::Range(0, 12));
  refine->add_option("--out", ref.out, "output path (default stdout)");

  QualityArgs qual;
  auto* quality = app.add_subcommand("quality", "Per-cell shape metrics as CSV");
  quality->add_option("--in", qual.in, "input mesh ('-' for stdin)")->required();
  quality->add_option("--delta", qual.delta, "large-angle threshold in radians")
      ->capture_default_str()
      ->check(CLI::Range(0.0, std::numbers::pi));

  InfSupArgs inf;
  auto* infsup = app.add_subcommand("infsup", "Discrete inf-sup constant under repeated refinement");
  infsup->add_option("--n0", inf.n0, "initial unit-square mesh size")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 10));
  infsup->add_option("--strategy", inf.strategy, "barycenter | incenter")
      ->check(CLI::IsMember(kStrategies))
      ->capture_default_str();
  infsup->add_option("--levels", inf.levels, "refinement levels")->capture_default_str()->check(CLI::Range(1, 12));
  infsup->add_option("--pair", inf.pair, "sv | p2p0")
      ->check(CLI::IsMember(kPairs))
      ->capture_default_str();
  infsup->add_flag("--iterative", inf.iterative, "inverse iteration instead of the dense eigensolver");
  infsup->add_option("--diagonal", inf.diagonal, "rightup | leftup")
      ->check(CLI::IsMember(kDiagonals))
      ->capture_default_str();
  infsup->add_option("--export-triplets", inf.triplets,
                     "write K, B, M of the finest level to PREFIX_{K,B,M}.txt as 'i j value' lines");

  LocalArgs loc;
  auto* local = app.add_subcommand("infsup-local", "Local stability constant of one split triangle");
  local->add_option("coords", loc.coords, "x1 y1 x2 y2 x3 y3")->expected(6)->required();
  local->add_option("--strategy", loc.strategy, "barycenter | incenter")
      ->check(CLI::IsMember(kStrategies))
      ->capture_default_str();

  StokesArgs sto;
  auto* stokes = app.add_subcommand("stokes", "Scott-Vogelius solve of the boundary-layer problem");
  auto* s_N = stokes->add_option("--N", sto.N, "Shishkin grid size (refined once)")
                  ->capture_default_str()
                  ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 12));
  auto* s_us = stokes->add_option("--unit-square", sto.unit_square, "uniform n x n mesh instead (refined once)")
                   ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 12));
  auto* s_tau = stokes->add_option("--tau", sto.tau, "Shishkin layer width")->check(positive);
  auto* s_mesh = stokes->add_option("--mesh", sto.mesh, "solve on this mesh file as given");
  auto* s_strategy = stokes->add_option("--strategy", sto.strategy, "barycenter | incenter")
                         ->check(CLI::IsMember(kStrategies))
                         ->capture_default_str();
  s_mesh->excludes(s_N)->excludes(s_tau)->excludes(s_us)->excludes(s_strategy);
  s_us->excludes(s_N)->excludes(s_tau);
  stokes->add_option("--eps", sto.eps, "boundary-layer parameter")->capture_default_str()->check(positive);
  stokes->add_option("--nu", sto.nu, "viscosity")->capture_default_str()->check(positive);
  stokes->add_option("--quad-degree", sto.quad_degree, "degree of the load and error quadrature")
      ->capture_default_str()
      ->check(CLI::Range(1, 40));

  ConvergenceArgs conv;
  auto* convergence = app.add_subcommand("convergence", "Barycenter vs incenter errors on Shishkin meshes");
  convergence->add_option("--N-list", conv.N_list, "comma-separated grid sizes")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 12));
  convergence->add_option("--eps", conv.eps, "boundary-layer parameter")->capture_default_str()->check(positive);
  convergence->add_option("--tau", conv.tau, "Shishkin layer width")->check(positive);
  convergence->add_option("--nu", conv.nu, "viscosity")->capture_default_str()->check(positive);
  convergence->add_option("--strategies", conv.strategies, "both | barycenter | incenter")
      ->capture_default_str()
      ->check(CLI::IsMember({"both", "barycenter", "incenter"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (generate->parsed() && gen.unit_square == 0 && gen.shishkin == 0) {
      throw CLI::ValidationError("generate", "one of --unit-square or --shishkin is required");
    }
    if (local->parsed() && loc.coords.size() != 6) {
      throw CLI::ValidationError("infsup-local", "expected 6 coordinates");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) print_header(err, *sub);
    if (generate->parsed()) return do_generate(gen, out);
    if (refine->parsed()) return do_refine(ref, out);
    if (quality->parsed()) return do_quality(qual, out);
    if (infsup->parsed()) return do_infsup(inf, out);
    if (local->parsed()) return do_local(loc, out);
    if (stokes->parsed()) return do_stokes(sto, out);
    if (convergence->parsed()) return do_convergence(conv, out);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace svlab::cli
