#include "svlab/fe_function.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace svlab {

FEFunction::FEFunction(std::shared_ptr<const FESpace> s, Eigen::VectorXd c)
    : space(std::move(s)), coefficients(std::move(c)) {
  if (!space) throw std::invalid_argument("FEFunction needs a space");
  if (static_cast<std::size_t>(coefficients.size()) != space->dof_count()) {
    throw std::invalid_argument("coefficient vector length does not match the space dof count");
  }
}

FEFunction::FEFunction(std::shared_ptr<const FESpace> s)
    : FEFunction(s, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s ? s->dof_count() : 0))) {}

FEFunction interpolate(std::shared_ptr<const FESpace> space, const VectorField& f) {
  if (space->kind() != SpaceKind::VectorP2Continuous) throw std::invalid_argument("vector interpolation needs P2");
  FEFunction fe(space);
  for (std::size_t node = 0; node < space->num_nodes(); ++node) {
    const Eigen::Vector2d v = f(space->node_point(node));
    fe.coefficients(static_cast<Eigen::Index>(2 * node)) = v.x();
    fe.coefficients(static_cast<Eigen::Index>(2 * node + 1)) = v.y();
  }
  return fe;
}

FEFunction interpolate(std::shared_ptr<const FESpace> space, const ScalarField& f) {
  const Mesh2D& mesh = space->mesh();
  FEFunction fe(space);
  switch (space->kind()) {
    case SpaceKind::ScalarP1Discontinuous:
      for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Triangle t = mesh.cell_points(c);
        for (std::size_t k = 0; k < 3; ++k) fe.coefficients(static_cast<Eigen::Index>(3 * c + k)) = f(t[k]);
      }
      break;
    case SpaceKind::ScalarP0:
      for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Triangle t = mesh.cell_points(c);
        fe.coefficients(static_cast<Eigen::Index>(c)) = f((t[0] + t[1] + t[2]) / 3.0);
      }
      break;
    case SpaceKind::VectorP2Continuous:
      throw std::invalid_argument("scalar interpolation into a vector space");
  }
  return fe;
}

Eigen::Vector2d evaluate_vector(const FEFunction& fe, std::size_t cell, const Barycentric& l) {
  std::array<std::size_t, 12> dofs{};
  fe.space->cell_dofs(cell, dofs);
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  for (std::size_t j = 0; j < 6; ++j) {
    const double phi = p2::value(j, l);
    v.x() += phi * fe.coefficients(static_cast<Eigen::Index>(dofs[2 * j]));
    v.y() += phi * fe.coefficients(static_cast<Eigen::Index>(dofs[2 * j + 1]));
  }
  return v;
}

Eigen::Matrix2d evaluate_vector_gradient(const FEFunction& fe, std::size_t cell, const Barycentric& l) {
  std::array<std::size_t, 12> dofs{};
  fe.space->cell_dofs(cell, dofs);
  const CellGeometry g = cell_geometry(fe.space->mesh().cell_points(cell));
  Eigen::Matrix2d grad = Eigen::Matrix2d::Zero();
  for (std::size_t j = 0; j < 6; ++j) {
    const Eigen::Vector2d dphi = p2::gradient(j, l, g);
    grad.row(0) += fe.coefficients(static_cast<Eigen::Index>(dofs[2 * j])) * dphi.transpose();
    grad.row(1) += fe.coefficients(static_cast<Eigen::Index>(dofs[2 * j + 1])) * dphi.transpose();
  }
  return grad;
}

double evaluate_scalar(const FEFunction& fe, std::size_t cell, const Barycentric& l) {
  switch (fe.space->kind()) {
    case SpaceKind::ScalarP1Discontinuous: {
      double v = 0.0;
      for (std::size_t k = 0; k < 3; ++k) v += l[k] * fe.coefficients(static_cast<Eigen::Index>(3 * cell + k));
      return v;
    }
    case SpaceKind::ScalarP0:
      return fe.coefficients(static_cast<Eigen::Index>(cell));
    case SpaceKind::VectorP2Continuous:
      break;
  }
  throw std::invalid_argument("scalar evaluation of a vector field");
}

ErrorNorms error_norms(const FEFunction& fe, const ExactVectorField& exact, const QuadratureRule& rule) {
  const Mesh2D& mesh = fe.space->mesh();
  ErrorNorms out;
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh.cell_points(c));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = g.map(rule.points[q]);
      const double w = rule.weights[q] * g.area;
      const Eigen::Matrix2d grad = evaluate_vector_gradient(fe, c, rule.points[q]);
      l2 += w * (evaluate_vector(fe, c, rule.points[q]) - exact.value(x)).squaredNorm();
      h1 += w * (grad - exact.gradient(x)).squaredNorm();
      out.linf_div = std::max(out.linf_div, std::abs(grad.trace()));
    }
  }
  out.l2 = std::sqrt(l2);
  out.h1_semi = std::sqrt(h1);
  return out;
}

double l2_error(const FEFunction& fe, const ScalarField& exact, const QuadratureRule& rule) {
  const Mesh2D& mesh = fe.space->mesh();
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh.cell_points(c));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double diff = evaluate_scalar(fe, c, rule.points[q]) - exact(g.map(rule.points[q]));
      sum += rule.weights[q] * g.area * diff * diff;
    }
  }
  return std::sqrt(sum);
}

double h1_seminorm(const FEFunction& fe) {
  const Mesh2D& mesh = fe.space->mesh();
  const QuadratureRule rule = QuadratureRule::symmetric_degree4();
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double area = std::abs(mesh.cell_area(c));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      sum += rule.weights[q] * area * evaluate_vector_gradient(fe, c, rule.points[q]).squaredNorm();
    }
  }
  return std::sqrt(sum);
}

}  // namespace svlab
