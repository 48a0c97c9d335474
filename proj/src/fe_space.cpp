#include "svlab/fe_space.hpp"

#include <cmath>
#include <stdexcept>

#include "svlab/error.hpp"

namespace svlab {

CellGeometry cell_geometry(const Triangle& t) {
  CellGeometry g;
  g.v = t;
  const double signed_a = signed_area(t[0], t[1], t[2]);
  if (signed_a == 0.0) throw GeometryError("degenerate cell in assembly");
  g.area = std::abs(signed_a);
  for (std::size_t i = 0; i < 3; ++i) {
    const Point2 e = t[(i + 2) % 3] - t[(i + 1) % 3];
    g.grad_lambda[i] = Eigen::Vector2d(-e.y, e.x) / (2.0 * signed_a);
  }
  return g;
}

namespace p2 {

double value(std::size_t j, const Barycentric& l) {
  if (j < 3) return l[j] * (2.0 * l[j] - 1.0);
  const std::size_t a = (j - 3 + 1) % 3, b = (j - 3 + 2) % 3;
  return 4.0 * l[a] * l[b];
}

Eigen::Vector2d gradient(std::size_t j, const Barycentric& l, const CellGeometry& g) {
  if (j < 3) return (4.0 * l[j] - 1.0) * g.grad_lambda[j];
  const std::size_t a = (j - 3 + 1) % 3, b = (j - 3 + 2) % 3;
  return 4.0 * (l[a] * g.grad_lambda[b] + l[b] * g.grad_lambda[a]);
}

}  // namespace p2

FESpace::FESpace(std::shared_ptr<const Mesh2D> mesh, SpaceKind kind, bool homogeneous_dirichlet)
    : mesh_(std::move(mesh)), kind_(kind) {
  if (!mesh_) throw std::invalid_argument("FESpace needs a mesh");
  const MeshTopology& topo = mesh_->topology();
  switch (kind_) {
    case SpaceKind::VectorP2Continuous:
      dof_count_ = 2 * (mesh_->num_vertices() + mesh_->num_edges());
      break;
    case SpaceKind::ScalarP1Discontinuous:
      dof_count_ = 3 * mesh_->num_cells();
      break;
    case SpaceKind::ScalarP0:
      dof_count_ = mesh_->num_cells();
      break;
  }
  dirichlet_mask_.assign(dof_count_, false);
  if (homogeneous_dirichlet && kind_ == SpaceKind::VectorP2Continuous) {
    const std::size_t nv = mesh_->num_vertices();
    for (std::size_t v = 0; v < nv; ++v) {
      if (topo.boundary_vertex[v]) dirichlet_mask_[2 * v] = dirichlet_mask_[2 * v + 1] = true;
    }
    for (std::size_t e = 0; e < mesh_->num_edges(); ++e) {
      if (topo.boundary_edge[e]) dirichlet_mask_[2 * (nv + e)] = dirichlet_mask_[2 * (nv + e) + 1] = true;
    }
  }
  for (std::size_t i = 0; i < dof_count_; ++i) {
    if (!dirichlet_mask_[i]) free_dofs_.push_back(i);
  }
}

std::size_t FESpace::dofs_per_cell() const {
  switch (kind_) {
    case SpaceKind::VectorP2Continuous:
      return 12;
    case SpaceKind::ScalarP1Discontinuous:
      return 3;
    case SpaceKind::ScalarP0:
      return 1;
  }
  return 0;
}

std::size_t FESpace::num_nodes() const { return mesh_->num_vertices() + mesh_->num_edges(); }

Point2 FESpace::node_point(std::size_t node) const {
  const std::size_t nv = mesh_->num_vertices();
  if (node < nv) return mesh_->vertices()[node];
  const auto& e = mesh_->topology().edges[node - nv];
  return 0.5 * (mesh_->vertices()[e[0]] + mesh_->vertices()[e[1]]);
}

std::array<std::size_t, 6> FESpace::cell_nodes(std::size_t c) const {
  const Cell& cell = mesh_->cells()[c];
  const auto& edges = mesh_->topology().cell_edges[c];
  const std::size_t nv = mesh_->num_vertices();
  return {cell[0], cell[1], cell[2], nv + edges[0], nv + edges[1], nv + edges[2]};
}

void FESpace::cell_dofs(std::size_t c, std::span<std::size_t> out) const {
  switch (kind_) {
    case SpaceKind::VectorP2Continuous: {
      const auto nodes = cell_nodes(c);
      for (std::size_t j = 0; j < 6; ++j) {
        out[2 * j] = 2 * nodes[j];
        out[2 * j + 1] = 2 * nodes[j] + 1;
      }
      break;
    }
    case SpaceKind::ScalarP1Discontinuous:
      for (std::size_t k = 0; k < 3; ++k) out[k] = 3 * c + k;
      break;
    case SpaceKind::ScalarP0:
      out[0] = c;
      break;
  }
}

FESpace build_space(std::shared_ptr<const Mesh2D> mesh, SpaceKind kind, bool homogeneous_dirichlet) {
  return FESpace(std::move(mesh), kind, homogeneous_dirichlet);
}

}  // namespace svlab
