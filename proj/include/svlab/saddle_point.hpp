#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "svlab/assembly.hpp"

namespace svlab {

/// Direct solver for the bordered saddle-point system
///
///   [ A   B^T  0 ] [u]   [f]
///   [ B   0    m ] [p] = [g]
///   [ 0   m^T  0 ] [mu]  [0]
///
/// where the last row pins the pressure component along m (one Lagrange
/// multiplier). A is typically the Dirichlet-reduced vector Laplacian.
///
/// B^T must annihilate the constant pressure (true for velocities vanishing on
/// the whole boundary). The bordered matrix is never formed: its dense last
/// row ruins the fill-reducing ordering. Instead the multiplier follows from
/// the compatibility condition 1^T (g - m mu) = 0, the system is factorized
/// with pressure dof 0 fixed, and the pressure is shifted along the constants
/// to satisfy m^T p = 0. This yields the solution of the bordered system.
class SaddlePointSolver {
 public:
  struct Solution {
    Eigen::VectorXd u;
    Eigen::VectorXd p;
    double multiplier = 0.0;
    double residual = 0.0;  // ||system * x - rhs|| / ||rhs|| (absolute when rhs = 0)
  };

  SaddlePointSolver(const SparseMat& A, const SparseMat& B, const Eigen::VectorXd& m);

  Solution solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;

  Eigen::Index velocity_size() const { return nu_; }
  Eigen::Index pressure_size() const { return np_; }

 private:
  struct Parts {
    Eigen::VectorXd u;
    Eigen::VectorXd p;
    double multiplier = 0.0;
  };
  Parts solve_once(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;

  Eigen::Index nu_ = 0;
  Eigen::Index np_ = 0;
  SparseMat A_;
  SparseMat B_;
  Eigen::VectorXd m_;
  SparseMat system_;  // pressure dof 0 removed
  Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace svlab
