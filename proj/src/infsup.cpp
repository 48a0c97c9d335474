#include "svlab/infsup.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "svlab/error.hpp"
#include "svlab/fe_space.hpp"
#include "svlab/geometry.hpp"
#include "svlab/saddle_point.hpp"

namespace svlab {

namespace {

SpaceKind pressure_kind(ElementPair pair) {
  return pair == ElementPair::SV_P2P1d ? SpaceKind::ScalarP1Discontinuous : SpaceKind::ScalarP0;
}

std::size_t pressure_dofs_per_cell(ElementPair pair) { return pair == ElementPair::SV_P2P1d ? 3 : 1; }

/// H S H with the Householder reflector H that maps m onto a multiple of e_1;
/// the trailing block is the restriction to the orthogonal complement of m.
Eigen::MatrixXd restrict_to_complement(const Eigen::MatrixXd& S, const Eigen::VectorXd& v) {
  const double vv = v.squaredNorm();
  Eigen::MatrixXd SH = S - (2.0 / vv) * (S * v) * v.transpose();
  Eigen::MatrixXd HSH = SH - (2.0 / vv) * v * (v.transpose() * SH);
  const Eigen::Index n = S.rows() - 1;
  Eigen::MatrixXd out = HSH.bottomRightCorner(n, n);
  return 0.5 * (out + out.transpose());
}

double dense_eigenvalue(const InfSupProblem& problem) {
  const Eigen::VectorXd& m = problem.mean_weights;
  Eigen::VectorXd v = m;
  v(0) += (m(0) >= 0.0 ? 1.0 : -1.0) * m.norm();
  const Eigen::MatrixXd S = dense_schur_complement(problem);
  const Eigen::MatrixXd Sz = restrict_to_complement(S, v);
  const Eigen::MatrixXd Mz = restrict_to_complement(Eigen::MatrixXd(problem.M), v);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Sz, Mz, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverError("dense generalized eigensolve did not converge");
  return solver.eigenvalues()(0);
}

double iterative_eigenvalue(const InfSupProblem& problem, const InfSupOptions& options) {
  const Eigen::VectorXd& m = problem.mean_weights;
  const Eigen::Index np = m.size();
  const double total = m.sum();
  // K u + B^T p = 0, B u - m mu = -M x, m^T p = 0  =>  S p + m mu = M x.
  const SaddlePointSolver solver(problem.K, problem.B, -m);
  Eigen::VectorXd x(np);
  for (Eigen::Index i = 0; i < np; ++i) x(i) = std::sin(1.0 + static_cast<double>(i)) + 0.5;
  x.array() -= m.dot(x) / total;
  x /= std::sqrt(x.dot(problem.M * x));

  const Eigen::VectorXd zero_u = Eigen::VectorXd::Zero(problem.K.rows());
  double lambda = 0.0;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd Mx = problem.M * x;
    const auto sol = solver.solve(zero_u, -Mx);
    const Eigen::VectorXd& p = sol.p;
    const Eigen::VectorXd Mp = problem.M * p;
    const double next = p.dot(Mx) / p.dot(Mp);
    const double norm_p = std::sqrt(p.dot(Mp));
    if (iter > 0 && std::abs(next - lambda) < options.tolerance * std::abs(next)) return next;
    lambda = next;
    x = p / norm_p;
  }
  // Residual of the final pair for the diagnostic.
  const Eigen::VectorXd Mx = problem.M * x;
  const auto sol = solver.solve(zero_u, -Mx);
  const Eigen::VectorXd Sx = Mx - m * sol.multiplier;
  const double norm_p = std::sqrt(sol.p.dot(problem.M * sol.p));
  const Eigen::VectorXd r = Sx / norm_p - lambda * problem.M * (sol.p / norm_p);
  throw SolverError("inverse iteration did not converge in " + std::to_string(options.max_iterations) +
                    " iterations (eigenvalue estimate " + std::to_string(lambda) + ", residual " +
                    std::to_string(r.norm()) + ")");
}

}  // namespace

InfSupProblem build_infsup_problem(const Mesh2D& mesh, ElementPair pair) {
  auto shared = std::make_shared<const Mesh2D>(mesh);
  const FESpace velocity(shared, SpaceKind::VectorP2Continuous, true);
  const FESpace pressure(shared, pressure_kind(pair));
  if (velocity.free_dofs().empty()) throw SolverError("no interior velocity dofs: stiffness matrix is singular");

  std::vector<std::size_t> all_pressure(pressure.dof_count());
  for (std::size_t i = 0; i < all_pressure.size(); ++i) all_pressure[i] = i;

  InfSupProblem problem;
  const SparseMatrix K = assemble_gradient_stiffness(velocity);
  problem.K = select(K.matrix, velocity.free_dofs(), velocity.free_dofs());
  const SparseMatrix B = assemble_divergence(velocity, pressure);
  problem.B = select(B.matrix, all_pressure, velocity.free_dofs());
  problem.M = assemble_mass(pressure).matrix;
  problem.mean_weights = problem.M * Eigen::VectorXd::Ones(problem.M.cols());
  return problem;
}

Eigen::MatrixXd dense_schur_complement(const InfSupProblem& problem) {
  Eigen::SimplicialLDLT<SparseMat> chol(problem.K);
  if (chol.info() != Eigen::Success) throw SolverError("factorization of the velocity stiffness failed");
  const Eigen::Index np = problem.B.rows();
  const SparseMat Bt = problem.B.transpose();
  Eigen::MatrixXd S(np, np);
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index start = 0; start < np; start += kBlock) {
    const Eigen::Index width = std::min(kBlock, np - start);
    const Eigen::MatrixXd rhs = Eigen::MatrixXd(Bt.middleCols(start, width));
    const Eigen::MatrixXd X = chol.solve(rhs);
    S.middleCols(start, width) = problem.B * X;
  }
  return 0.5 * (S + S.transpose());
}

double smallest_mean_zero_eigenvalue(const InfSupProblem& problem, const InfSupOptions& options) {
  const auto np = static_cast<std::size_t>(problem.B.rows());
  if (np < 2) throw SolverError("mean-zero pressure space is empty");
  if (options.iterative) {
    if (np > options.max_iterative_pressure_dofs) {
      throw SolverError(std::to_string(np) + " pressure dofs exceed the iterative limit of " +
                        std::to_string(options.max_iterative_pressure_dofs));
    }
    return iterative_eigenvalue(problem, options);
  }
  if (np > options.max_dense_pressure_dofs) {
    throw SolverError(std::to_string(np) + " pressure dofs exceed the dense eigensolver limit of " +
                      std::to_string(options.max_dense_pressure_dofs) + "; use iterative mode");
  }
  return dense_eigenvalue(problem);
}

double global_infsup(const Mesh2D& mesh, ElementPair pair, const InfSupOptions& options) {
  const double lambda = smallest_mean_zero_eigenvalue(build_infsup_problem(mesh, pair), options);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw SolverError("smallest mean-zero eigenvalue is not positive (" + std::to_string(lambda) + ")");
  }
  return std::sqrt(lambda);
}

LocalStabilityResult local_infsup(const Triangle& t, SplitStrategy strategy) {
  Triangle ccw = t;
  if (signed_area(t[0], t[1], t[2]) < 0.0) std::swap(ccw[1], ccw[2]);
  const double aspect = aspect_ratio(ccw);
  const Mesh2D macro({ccw[0], ccw[1], ccw[2]}, {Cell{0, 1, 2}});
  auto split = std::make_shared<const Mesh2D>(clough_tocher_refine(macro, strategy));

  const FESpace velocity(split, SpaceKind::VectorP2Continuous, true);
  const FESpace pressure(split, SpaceKind::ScalarP1Discontinuous);
  const auto& interior = velocity.free_dofs();

  LocalStabilityResult result;
  result.aspect = aspect;
  result.interior_dof_count = interior.size();
  result.K = Eigen::MatrixXd(select(assemble_gradient_stiffness(velocity).matrix, interior, interior));
  // div v lies in the discontinuous P1 space, so the Gram matrix of the
  // divergence is B^T M^{-1} B exactly.
  std::vector<std::size_t> all_pressure(pressure.dof_count());
  for (std::size_t i = 0; i < all_pressure.size(); ++i) all_pressure[i] = i;
  const Eigen::MatrixXd B(select(assemble_divergence(velocity, pressure).matrix, all_pressure, interior));
  const Eigen::MatrixXd M(assemble_mass(pressure).matrix);
  result.G = B.transpose() * M.ldlt().solve(B);
  result.G = 0.5 * (result.G + result.G.transpose());

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(result.G, Eigen::EigenvaluesOnly);
  const double largest = gram.eigenvalues().cwiseAbs().maxCoeff();
  result.divergence_rank = static_cast<std::size_t>(
      (gram.eigenvalues().array().abs() > 1e-10 * largest).count());

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> pencil(result.G, result.K, Eigen::EigenvaluesOnly);
  if (pencil.info() != Eigen::Success) throw SolverError("local generalized eigensolve failed");
  result.beta_local = std::sqrt(std::max(0.0, pencil.eigenvalues()(0)));
  return result;
}

double compose_beta(double beta0, double beta_star) {
  if (!(beta0 > 0.0) || !(beta_star > 0.0)) throw std::invalid_argument("compose_beta needs positive inputs");
  return beta0 * beta_star / (beta_star + beta0 + 1.0);
}

InfSupReport rate_table(std::span<const double> betas, std::span<const double> aspects) {
  if (betas.size() != aspects.size() || betas.size() < 2) {
    throw std::invalid_argument("rate_table needs two equal-length sequences of at least two entries");
  }
  InfSupReport report;
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (!(betas[k] > 0.0) || !(aspects[k] > 0.0)) throw std::invalid_argument("rate_table entries must be positive");
    InfSupRow row{static_cast<int>(k) + 1, betas[k], aspects[k], std::nullopt};
    if (k > 0) row.rate = std::log(betas[k - 1] / betas[k]) / std::log(aspects[k] / aspects[k - 1]);
    report.rows.push_back(row);
  }
  return report;
}

InfSupReport refinement_study(std::size_t n0, SplitStrategy strategy, int levels, ElementPair pair,
                              const InfSupOptions& options, Diagonal diagonal) {
  if (levels < 1) throw std::invalid_argument("refinement_study needs at least one level");
  const std::size_t limit = options.iterative ? options.max_iterative_pressure_dofs : options.max_dense_pressure_dofs;
  std::size_t final_cells = 2 * n0 * n0;
  for (int l = 0; l < levels; ++l) final_cells *= 3;
  const std::size_t final_dofs = final_cells * pressure_dofs_per_cell(pair);
  if (final_dofs > limit) {
    throw SolverError("refinement study would reach " + std::to_string(final_dofs) + " pressure dofs (limit " +
                      std::to_string(limit) + (options.iterative ? ")" : "; use iterative mode)"));
  }

  std::vector<double> betas, aspects;
  Mesh2D mesh = generate_unit_square_mesh(n0, diagonal);
  for (int level = 1; level <= levels; ++level) {
    mesh = clough_tocher_refine(mesh, strategy);
    aspects.push_back(max_aspect_ratio(mesh));
    betas.push_back(global_infsup(mesh, pair, options));
  }
  InfSupReport report;
  if (levels >= 2) {
    report = rate_table(betas, aspects);
  } else {
    report.rows.push_back({1, betas[0], aspects[0], std::nullopt});
  }
  report.pair = pair;
  report.strategy = strategy;
  return report;
}

}  // namespace svlab
