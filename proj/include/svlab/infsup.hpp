#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "svlab/assembly.hpp"
#include "svlab/mesh.hpp"

namespace svlab {

/// SV_P2P1d: continuous P2 velocity with discontinuous P1 pressure.
/// P2P0: continuous P2 velocity with piecewise constant pressure.
enum class ElementPair { SV_P2P1d, P2P0 };

inline std::string_view to_string(ElementPair p) { return p == ElementPair::SV_P2P1d ? "sv" : "p2p0"; }

struct InfSupOptions {
  bool iterative = false;
  double tolerance = 1e-10;  // relative change of successive eigenvalue estimates
  std::size_t max_iterations = 20000;
  std::size_t max_dense_pressure_dofs = 10000;
  std::size_t max_iterative_pressure_dofs = 100000;
};

/// Dirichlet-reduced operators of the discrete inf-sup problem.
struct InfSupProblem {
  SparseMat K;                   // vector Laplacian on free velocity dofs
  SparseMat B;                   // divergence, pressure rows x free velocity columns
  SparseMat M;                   // pressure mass
  Eigen::VectorXd mean_weights;  // M * 1, the functional q -> integral q
};

InfSupProblem build_infsup_problem(const Mesh2D& mesh, ElementPair pair);

/// S = B K^{-1} B^T, formed column block by column block from one sparse
/// Cholesky factorization of K.
Eigen::MatrixXd dense_schur_complement(const InfSupProblem& problem);

/// Smallest eigenvalue of S q = lambda M q over mean-zero pressures.
double smallest_mean_zero_eigenvalue(const InfSupProblem& problem, const InfSupOptions& options = {});

/// Discrete inf-sup constant beta = sqrt(lambda_min) with the H1 seminorm on
/// velocities and the L2 norm on mean-zero pressures.
double global_infsup(const Mesh2D& mesh, ElementPair pair, const InfSupOptions& options = {});

struct LocalStabilityResult {
  double beta_local = 0.0;
  std::size_t interior_dof_count = 0;
  std::size_t divergence_rank = 0;
  double aspect = 0.0;
  Eigen::MatrixXd G;  // divergence Gram matrix on interior dofs
  Eigen::MatrixXd K;  // gradient Gram matrix on interior dofs
};

/// Local constant on the Clough-Tocher split of one triangle: the largest beta
/// with beta ||grad v|| <= ||div v|| for all P2 fields vanishing on the boundary.
LocalStabilityResult local_infsup(const Triangle& t, SplitStrategy strategy);

/// Global lower bound from the P2-P0 constant and the worst local constant.
double compose_beta(double beta0, double beta_star);

struct InfSupRow {
  int level = 0;
  double beta = 0.0;
  double aspect = 0.0;
  std::optional<double> rate;
};

struct InfSupReport {
  std::vector<InfSupRow> rows;
  ElementPair pair = ElementPair::SV_P2P1d;
  SplitStrategy strategy = SplitStrategy::Barycenter;
};

/// rate_k = ln(beta_{k-1}/beta_k) / ln(aspect_k/aspect_{k-1}); levels numbered from 1.
InfSupReport rate_table(std::span<const double> betas, std::span<const double> aspects);

/// Repeated Clough-Tocher refinement of the n0 x n0 unit square mesh; one row
/// per refinement level with the max cell aspect ratio and the global beta.
InfSupReport refinement_study(std::size_t n0, SplitStrategy strategy, int levels, ElementPair pair,
                              const InfSupOptions& options = {}, Diagonal diagonal = Diagonal::RightUp);

}  // namespace svlab
