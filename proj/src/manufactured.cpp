#include "svlab/manufactured.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace svlab {

namespace {

// q(s) = s^2 (1-s)^2 and its derivatives up to third order.
std::array<double, 4> bubble(double s) {
  return {s * s * (1.0 - s) * (1.0 - s), 2.0 * s - 6.0 * s * s + 4.0 * s * s * s, 2.0 - 12.0 * s + 12.0 * s * s,
          -12.0 + 24.0 * s};
}

// g(x) = q(x) exp(-x/eps) and derivatives up to third order.
std::array<double, 4> layer(double x, double eps) {
  const auto q = bubble(x);
  const double e = std::exp(-x / eps);
  const double k = 1.0 / eps;
  return {q[0] * e, (q[1] - k * q[0]) * e, (q[2] - 2.0 * k * q[1] + k * k * q[0]) * e,
          (q[3] - 3.0 * k * q[2] + 3.0 * k * k * q[1] - k * k * k * q[0]) * e};
}

}  // namespace

ManufacturedSolution::ManufacturedSolution(double epsilon, double nu, double pressure_amplitude)
    : eps_(epsilon), nu_(nu), amplitude_(pressure_amplitude) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
  mean_ = -eps_ * std::expm1(-1.0 / eps_);
}

double ManufacturedSolution::stream(Point2 x) const { return layer(x.x, eps_)[0] * bubble(x.y)[0]; }

Eigen::Vector2d ManufacturedSolution::velocity(Point2 x) const {
  const auto g = layer(x.x, eps_);
  const auto h = bubble(x.y);
  return {g[0] * h[1], -g[1] * h[0]};
}

Eigen::Matrix2d ManufacturedSolution::velocity_gradient(Point2 x) const {
  const auto g = layer(x.x, eps_);
  const auto h = bubble(x.y);
  Eigen::Matrix2d grad;
  grad << g[1] * h[1], g[0] * h[2], -g[2] * h[0], -g[1] * h[1];
  return grad;
}

Eigen::Vector2d ManufacturedSolution::velocity_laplacian(Point2 x) const {
  const auto g = layer(x.x, eps_);
  const auto h = bubble(x.y);
  return {g[2] * h[1] + g[0] * h[3], -(g[3] * h[0] + g[1] * h[2])};
}

double ManufacturedSolution::raw_pressure(Point2 x) const { return amplitude_ * std::exp(-x.x / eps_); }

double ManufacturedSolution::pressure(Point2 x) const { return raw_pressure(x) - amplitude_ * mean_; }

Eigen::Vector2d ManufacturedSolution::pressure_gradient(Point2 x) const {
  return {-raw_pressure(x) / eps_, 0.0};
}

Eigen::Vector2d ManufacturedSolution::body_force(Point2 x) const {
  return -nu_ * velocity_laplacian(x) + pressure_gradient(x);
}

ManufacturedSolution exact_solution(double epsilon, double nu) { return ManufacturedSolution(epsilon, nu); }

}  // namespace svlab
