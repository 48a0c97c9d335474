#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "svlab/mesh.hpp"

namespace svlab {

enum class SpaceKind { VectorP2Continuous, ScalarP1Discontinuous, ScalarP0 };

using Barycentric = std::array<double, 3>;

/// Affine data of one cell: area and barycentric-coordinate gradients.
struct CellGeometry {
  Triangle v{};
  double area = 0.0;  // absolute
  std::array<Eigen::Vector2d, 3> grad_lambda;

  Point2 map(const Barycentric& l) const { return l[0] * v[0] + l[1] * v[1] + l[2] * v[2]; }
};

CellGeometry cell_geometry(const Triangle& t);

/// Quadratic Lagrange basis on a triangle: local nodes 0..2 are the vertices,
/// 3+k is the midpoint of the edge opposite vertex k.
namespace p2 {
double value(std::size_t j, const Barycentric& l);
Eigen::Vector2d gradient(std::size_t j, const Barycentric& l, const CellGeometry& g);
inline constexpr std::array<Barycentric, 6> nodes = {{{1, 0, 0},
                                                       {0, 1, 0},
                                                       {0, 0, 1},
                                                       {0, 0.5, 0.5},
                                                       {0.5, 0, 0.5},
                                                       {0.5, 0.5, 0}}};
}  // namespace p2

/// Degree-of-freedom layout of a finite element space over a mesh.
///
/// VectorP2Continuous: scalar nodes are the mesh vertices followed by the
/// edges (topology order); dof 2*node + c carries component c.
/// ScalarP1Discontinuous: dof 3*cell + k is the value at local vertex k.
/// ScalarP0: dof = cell index.
class FESpace {
 public:
  FESpace(std::shared_ptr<const Mesh2D> mesh, SpaceKind kind, bool homogeneous_dirichlet = false);

  SpaceKind kind() const { return kind_; }
  const Mesh2D& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh2D>& mesh_ptr() const { return mesh_; }

  std::size_t dof_count() const { return dof_count_; }
  std::size_t dofs_per_cell() const;
  bool is_vector() const { return kind_ == SpaceKind::VectorP2Continuous; }

  /// Global dofs of cell c in local order (P2: 2*j + component).
  void cell_dofs(std::size_t c, std::span<std::size_t> out) const;

  /// Per-dof flag; all false unless built with homogeneous_dirichlet.
  const std::vector<bool>& dirichlet_mask() const { return dirichlet_mask_; }
  /// Dofs not constrained by the Dirichlet condition, ascending.
  const std::vector<std::size_t>& free_dofs() const { return free_dofs_; }

  // P2 scalar nodes.
  std::size_t num_nodes() const;
  Point2 node_point(std::size_t node) const;
  std::array<std::size_t, 6> cell_nodes(std::size_t c) const;

 private:
  std::shared_ptr<const Mesh2D> mesh_;
  SpaceKind kind_;
  std::size_t dof_count_ = 0;
  std::vector<bool> dirichlet_mask_;
  std::vector<std::size_t> free_dofs_;
};

FESpace build_space(std::shared_ptr<const Mesh2D> mesh, SpaceKind kind, bool homogeneous_dirichlet = false);

}  // namespace svlab
