#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "svlab/assembly.hpp"
#include "svlab/fe_function.hpp"
#include "svlab/manufactured.hpp"
#include "svlab/mesh.hpp"

namespace svlab {

struct StokesOptions {
  int quadrature_degree = 10;  // load vector and error norms
};

struct SolveReport {
  std::size_t dofs_v = 0;  // velocity dofs including boundary nodes
  std::size_t dofs_p = 0;
  double l2_vel = 0.0;
  double h1_vel = 0.0;
  double l2_prs = 0.0;
  double linf_div = 0.0;
  double h1_norm = 0.0;  // |u_h|_{H1}
  double solver_residual = 0.0;
};

struct StokesResult {
  FEFunction velocity;
  FEFunction pressure;
  SolveReport report;
};

/// Scott-Vogelius discretization (continuous P2 velocity, discontinuous P1
/// pressure) of -nu lap u + grad p = f, div u = 0, u = 0 on the boundary, with
/// mean-zero pressure. Error fields of the report are left at zero.
StokesResult solve_stokes(const Mesh2D& mesh, double nu, const VectorField& force, const StokesOptions& options = {});

/// Solve with the manufactured body force and measure errors against it.
StokesResult solve_stokes(const Mesh2D& mesh, const ManufacturedSolution& solution,
                          const StokesOptions& options = {});

/// 3 eps log10(1/eps).
double default_tau(double epsilon);

struct ComparisonRow {
  std::size_t N = 0;
  SplitStrategy strategy = SplitStrategy::Barycenter;
  double parent_aspect = 0.0;
  double max_aspect = 0.0;
  SolveReport report;
};

/// For each N: Shishkin parent mesh, one Clough-Tocher refinement per
/// strategy, solve against the boundary-layer solution.
std::vector<ComparisonRow> compare_strategies(std::span<const std::size_t> N_list, double epsilon, double tau,
                                              double nu = 1.0,
                                              std::span<const SplitStrategy> strategies = {});

}  // namespace svlab
