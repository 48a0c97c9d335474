#include "svlab/saddle_point.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "svlab/error.hpp"

namespace svlab {

SaddlePointSolver::SaddlePointSolver(const SparseMat& A, const SparseMat& B, const Eigen::VectorXd& m)
    : nu_(A.rows()), np_(B.rows()), A_(A), B_(B), m_(m) {
  if (A.cols() != nu_ || B.cols() != nu_ || m.size() != np_ || np_ < 1) {
    throw std::invalid_argument("saddle-point blocks have inconsistent sizes");
  }
  if (std::abs(m.sum()) <= 0.0) throw std::invalid_argument("constraint vector must have a nonzero sum");
  const Eigen::VectorXd bt1 = B.transpose() * Eigen::VectorXd::Ones(np_);
  if (bt1.lpNorm<Eigen::Infinity>() > 1e-10 * std::max(1.0, B.norm())) {
    throw std::invalid_argument("B^T must annihilate constant pressures");
  }
  const Eigen::Index n = nu_ + np_ - 1;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(A.nonZeros() + 2 * B.nonZeros()));
  for (Eigen::Index k = 0; k < A.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(A, k); it; ++it) triplets.emplace_back(it.row(), it.col(), it.value());
  }
  for (Eigen::Index k = 0; k < B.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(B, k); it; ++it) {
      if (it.row() == 0) continue;
      triplets.emplace_back(nu_ + it.row() - 1, it.col(), it.value());
      triplets.emplace_back(it.col(), nu_ + it.row() - 1, it.value());
    }
  }
  system_.resize(n, n);
  system_.setFromTriplets(triplets.begin(), triplets.end());
  system_.makeCompressed();
  lu_.analyzePattern(system_);
  lu_.factorize(system_);
  if (lu_.info() != Eigen::Success) {
    throw SolverError("saddle-point factorization failed: " + lu_.lastErrorMessage());
  }
}

SaddlePointSolver::Parts SaddlePointSolver::solve_once(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
  Parts s;
  s.multiplier = g.sum() / m_.sum();
  const Eigen::VectorXd compatible = g - s.multiplier * m_;
  Eigen::VectorXd rhs(nu_ + np_ - 1);
  rhs.head(nu_) = f;
  rhs.tail(np_ - 1) = compatible.tail(np_ - 1);
  const Eigen::VectorXd x = lu_.solve(rhs);
  if (lu_.info() != Eigen::Success) throw SolverError("saddle-point solve failed");
  s.u = x.head(nu_);
  s.p.resize(np_);
  s.p(0) = 0.0;
  s.p.tail(np_ - 1) = x.tail(np_ - 1);
  s.p.array() -= m_.dot(s.p) / m_.sum();
  return s;
}

SaddlePointSolver::Solution SaddlePointSolver::solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
  if (f.size() != nu_ || g.size() != np_) throw std::invalid_argument("right-hand side has the wrong size");
  auto residual = [&](const Parts& s, Eigen::VectorXd& rf, Eigen::VectorXd& rg, double& rm) {
    rf = f - A_ * s.u - B_.transpose() * s.p;
    rg = g - B_ * s.u - s.multiplier * m_;
    rm = -m_.dot(s.p);
  };
  Parts s = solve_once(f, g);
  Eigen::VectorXd rf;
  Eigen::VectorXd rg;
  double rm = 0.0;
  // One step of iterative refinement; m^T p = 0 holds by construction.
  residual(s, rf, rg, rm);
  const Parts c = solve_once(rf, rg);
  s.u += c.u;
  s.p += c.p;
  s.multiplier += c.multiplier;
  residual(s, rf, rg, rm);

  Solution out;
  out.u = std::move(s.u);
  out.p = std::move(s.p);
  out.multiplier = s.multiplier;
  const double rhs_norm = std::sqrt(f.squaredNorm() + g.squaredNorm());
  const double res = std::sqrt(rf.squaredNorm() + rg.squaredNorm() + rm * rm);
  out.residual = rhs_norm > 0.0 ? res / rhs_norm : res;
  if (!std::isfinite(out.residual)) throw SolverError("saddle-point solve produced non-finite values");
  return out;
}

}  // namespace svlab
