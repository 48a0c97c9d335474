#pragma once

#include <functional>
#include <iosfwd>
#include <span>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "svlab/fe_space.hpp"
#include "svlab/quadrature.hpp"

namespace svlab {

using SparseMat = Eigen::SparseMatrix<double>;
using VectorField = std::function<Eigen::Vector2d(Point2)>;
using ScalarField = std::function<double(Point2)>;

/// Assembled operator. `symmetric` records the structural property of the
/// bilinear form, not a runtime check.
struct SparseMatrix {
  SparseMat matrix;
  bool symmetric = false;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

/// K_ij = integral grad(phi_i) : grad(phi_j) over the full (unconstrained) space.
SparseMatrix assemble_gradient_stiffness(const FESpace& velocity);

/// B_ij = integral div(phi_j) psi_i; rows are pressure dofs.
SparseMatrix assemble_divergence(const FESpace& velocity, const FESpace& pressure);

/// Pressure mass matrix (block diagonal per cell).
SparseMatrix assemble_mass(const FESpace& pressure);

/// Load vector F_i = integral f . phi_i.
Eigen::VectorXd assemble_load(const FESpace& velocity, const VectorField& f, const QuadratureRule& rule);

/// Submatrix with the given rows and columns (ascending index lists).
SparseMat select(const SparseMat& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

/// Writes "i j value" lines, one per stored nonzero.
void write_triplets(std::ostream& out, const SparseMat& m);

}  // namespace svlab
