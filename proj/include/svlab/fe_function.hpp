#pragma once

#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "svlab/assembly.hpp"
#include "svlab/fe_space.hpp"
#include "svlab/quadrature.hpp"

namespace svlab {

/// Coefficient vector over a space.
struct FEFunction {
  std::shared_ptr<const FESpace> space;
  Eigen::VectorXd coefficients;

  FEFunction(std::shared_ptr<const FESpace> s, Eigen::VectorXd c);
  explicit FEFunction(std::shared_ptr<const FESpace> s);
};

/// Nodal interpolation: vertex and edge-midpoint values for P2.
FEFunction interpolate(std::shared_ptr<const FESpace> space, const VectorField& f);
/// Vertex values per cell for P1d, barycenter value for P0.
FEFunction interpolate(std::shared_ptr<const FESpace> space, const ScalarField& f);

Eigen::Vector2d evaluate_vector(const FEFunction& fe, std::size_t cell, const Barycentric& l);
/// Row r is the gradient of component r.
Eigen::Matrix2d evaluate_vector_gradient(const FEFunction& fe, std::size_t cell, const Barycentric& l);
double evaluate_scalar(const FEFunction& fe, std::size_t cell, const Barycentric& l);

struct ExactVectorField {
  VectorField value;
  std::function<Eigen::Matrix2d(Point2)> gradient;  // row r = grad of component r
};

struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double linf_div = 0.0;  // max |div fe| over quadrature points
};

ErrorNorms error_norms(const FEFunction& fe, const ExactVectorField& exact, const QuadratureRule& rule);

/// L2 error of a scalar field.
double l2_error(const FEFunction& fe, const ScalarField& exact, const QuadratureRule& rule);

/// |fe|_{H1} of a vector P2 field (exact, degree-4 rule).
double h1_seminorm(const FEFunction& fe);

}  // namespace svlab
