#include "svlab/stokes.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "svlab/error.hpp"
#include "svlab/geometry.hpp"
#include "svlab/quadrature.hpp"
#include "svlab/saddle_point.hpp"

namespace svlab {

StokesResult solve_stokes(const Mesh2D& mesh, double nu, const VectorField& force, const StokesOptions& options) {
  if (!(nu > 0.0)) throw std::invalid_argument("viscosity must be positive");
  auto shared = std::make_shared<const Mesh2D>(mesh);
  auto velocity = std::make_shared<const FESpace>(shared, SpaceKind::VectorP2Continuous, true);
  auto pressure = std::make_shared<const FESpace>(shared, SpaceKind::ScalarP1Discontinuous);
  const auto& free = velocity->free_dofs();
  if (free.empty()) throw SolverError("mesh has no interior velocity dofs");

  std::vector<std::size_t> all_pressure(pressure->dof_count());
  for (std::size_t i = 0; i < all_pressure.size(); ++i) all_pressure[i] = i;

  const SparseMat K = nu * select(assemble_gradient_stiffness(*velocity).matrix, free, free);
  const SparseMat B = select(assemble_divergence(*velocity, *pressure).matrix, all_pressure, free);
  const SparseMat M = assemble_mass(*pressure).matrix;
  const Eigen::VectorXd m = M * Eigen::VectorXd::Ones(M.cols());

  const QuadratureRule rule = QuadratureRule::collapsed_gauss(options.quadrature_degree);
  const Eigen::VectorXd load = assemble_load(*velocity, force, rule);
  Eigen::VectorXd f(static_cast<Eigen::Index>(free.size()));
  for (std::size_t i = 0; i < free.size(); ++i) f(static_cast<Eigen::Index>(i)) = load(static_cast<Eigen::Index>(free[i]));

  // nu K u - B^T p = f,  -B u + m mu = 0,  m^T p = 0.
  const SparseMat negB = -B;
  const SaddlePointSolver solver(K, negB, m);
  const auto sol = solver.solve(f, Eigen::VectorXd::Zero(B.rows()));

  FEFunction uh(velocity);
  for (std::size_t i = 0; i < free.size(); ++i) {
    uh.coefficients(static_cast<Eigen::Index>(free[i])) = sol.u(static_cast<Eigen::Index>(i));
  }
  FEFunction ph(pressure, sol.p);

  SolveReport report;
  report.dofs_v = velocity->dof_count();
  report.dofs_p = pressure->dof_count();
  report.solver_residual = sol.residual;
  report.h1_norm = h1_seminorm(uh);
  const ExactVectorField zero{[](Point2) { return Eigen::Vector2d::Zero().eval(); },
                              [](Point2) { return Eigen::Matrix2d::Zero().eval(); }};
  report.linf_div = error_norms(uh, zero, rule).linf_div;
  return {std::move(uh), std::move(ph), report};
}

StokesResult solve_stokes(const Mesh2D& mesh, const ManufacturedSolution& solution, const StokesOptions& options) {
  StokesResult result =
      solve_stokes(mesh, solution.nu(), [&](Point2 x) { return solution.body_force(x); }, options);
  const QuadratureRule rule = QuadratureRule::collapsed_gauss(options.quadrature_degree);
  const ExactVectorField exact{[&](Point2 x) { return solution.velocity(x); },
                               [&](Point2 x) { return solution.velocity_gradient(x); }};
  const ErrorNorms err = error_norms(result.velocity, exact, rule);
  result.report.l2_vel = err.l2;
  result.report.h1_vel = err.h1_semi;
  result.report.l2_prs = l2_error(result.pressure, [&](Point2 x) { return solution.pressure(x); }, rule);
  return result;
}

double default_tau(double epsilon) { return 3.0 * epsilon * std::log10(1.0 / epsilon); }

std::vector<ComparisonRow> compare_strategies(std::span<const std::size_t> N_list, double epsilon, double tau,
                                              double nu, std::span<const SplitStrategy> strategies) {
  static constexpr SplitStrategy kBoth[] = {SplitStrategy::Barycenter, SplitStrategy::Incenter};
  if (strategies.empty()) strategies = kBoth;
  const ManufacturedSolution solution(epsilon, nu);
  std::vector<ComparisonRow> rows;
  for (std::size_t N : N_list) {
    const Mesh2D parent = generate_shishkin_mesh(N, tau);
    const double parent_aspect = max_aspect_ratio(parent);
    for (SplitStrategy strategy : strategies) {
      const Mesh2D refined = clough_tocher_refine(parent, strategy);
      ComparisonRow row;
      row.N = N;
      row.strategy = strategy;
      row.parent_aspect = parent_aspect;
      row.max_aspect = max_aspect_ratio(refined);
      row.report = solve_stokes(refined, solution).report;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace svlab
