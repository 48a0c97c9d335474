#pragma once

#include <Eigen/Dense>

#include "svlab/point.hpp"

namespace svlab {

/// Boundary-layer Stokes solution on the unit square built from the stream
/// function xi = x^2 (1-x)^2 y^2 (1-y)^2 exp(-x/eps):
///   u = (d xi/dy, -d xi/dx),  p = A (exp(-x/eps) - mean),  f = -nu lap u + grad p.
/// The layer of width O(eps) sits at x = 0. A is the pressure amplitude
/// (1 for the benchmark; 0 gives a pressure-free problem).
class ManufacturedSolution {
 public:
  ManufacturedSolution(double epsilon, double nu, double pressure_amplitude = 1.0);

  double epsilon() const { return eps_; }
  double nu() const { return nu_; }
  double pressure_amplitude() const { return amplitude_; }

  double stream(Point2 x) const;
  Eigen::Vector2d velocity(Point2 x) const;
  /// Row r is the gradient of velocity component r.
  Eigen::Matrix2d velocity_gradient(Point2 x) const;
  Eigen::Vector2d velocity_laplacian(Point2 x) const;
  /// Mean-free pressure.
  double pressure(Point2 x) const;
  /// exp(-x/eps) before the mean shift, scaled by the amplitude.
  double raw_pressure(Point2 x) const;
  Eigen::Vector2d pressure_gradient(Point2 x) const;
  Eigen::Vector2d body_force(Point2 x) const;
  /// integral over the unit square of exp(-x/eps), = eps (1 - exp(-1/eps)).
  double pressure_mean() const { return mean_; }

 private:
  double eps_;
  double nu_;
  double amplitude_;
  double mean_;
};

ManufacturedSolution exact_solution(double epsilon, double nu);

}  // namespace svlab
