#include "svlab/assembly.hpp"

#include <array>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "svlab/error.hpp"
#include "svlab/mesh_io.hpp"

namespace svlab {

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMat from_triplets(Eigen::Index rows, Eigen::Index cols, const std::vector<Triplet>& triplets) {
  SparseMat m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

/// Values and gradients of the six scalar P2 shape functions at each quadrature point.
struct P2Tabulation {
  std::vector<std::array<double, 6>> values;
  std::vector<std::array<Eigen::Vector2d, 6>> gradients;
};

P2Tabulation tabulate_p2(const CellGeometry& g, const QuadratureRule& rule) {
  P2Tabulation tab;
  tab.values.resize(rule.size());
  tab.gradients.resize(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    for (std::size_t j = 0; j < 6; ++j) {
      tab.values[q][j] = p2::value(j, rule.points[q]);
      tab.gradients[q][j] = p2::gradient(j, rule.points[q], g);
    }
  }
  return tab;
}

double pressure_shape(SpaceKind kind, std::size_t k, const Barycentric& l) {
  return kind == SpaceKind::ScalarP0 ? 1.0 : l[k];
}

void require_velocity(const FESpace& space) {
  if (space.kind() != SpaceKind::VectorP2Continuous) throw std::invalid_argument("expected a vector P2 space");
}

void require_pressure(const FESpace& space) {
  if (space.kind() == SpaceKind::VectorP2Continuous) throw std::invalid_argument("expected a scalar pressure space");
}

}  // namespace

SparseMatrix assemble_gradient_stiffness(const FESpace& velocity) {
  require_velocity(velocity);
  const Mesh2D& mesh = velocity.mesh();
  const QuadratureRule rule = QuadratureRule::symmetric_degree4();
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_cells() * 72);
  std::array<std::size_t, 12> dofs{};
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh.cell_points(c));
    const P2Tabulation tab = tabulate_p2(g, rule);
    Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * g.area;
      for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) local(i, j) += w * tab.gradients[q][i].dot(tab.gradients[q][j]);
      }
    }
    velocity.cell_dofs(c, dofs);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        for (std::size_t comp = 0; comp < 2; ++comp) {
          triplets.emplace_back(dofs[2 * i + comp], dofs[2 * j + comp], local(i, j));
        }
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(velocity.dof_count());
  return {from_triplets(n, n, triplets), true};
}

SparseMatrix assemble_divergence(const FESpace& velocity, const FESpace& pressure) {
  require_velocity(velocity);
  require_pressure(pressure);
  if (velocity.mesh_ptr() != pressure.mesh_ptr()) throw std::invalid_argument("velocity and pressure meshes differ");
  const Mesh2D& mesh = velocity.mesh();
  const QuadratureRule rule = QuadratureRule::symmetric_degree4();
  const std::size_t npc = pressure.dofs_per_cell();
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_cells() * 12 * npc);
  std::array<std::size_t, 12> vdofs{};
  std::array<std::size_t, 3> pdofs{};
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh.cell_points(c));
    const P2Tabulation tab = tabulate_p2(g, rule);
    Eigen::Matrix<double, 3, 12> local = Eigen::Matrix<double, 3, 12>::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * g.area;
      for (std::size_t k = 0; k < npc; ++k) {
        const double psi = pressure_shape(pressure.kind(), k, rule.points[q]);
        for (std::size_t j = 0; j < 6; ++j) {
          // div(phi e_comp) = d phi / d x_comp
          local(k, 2 * j) += w * psi * tab.gradients[q][j].x();
          local(k, 2 * j + 1) += w * psi * tab.gradients[q][j].y();
        }
      }
    }
    velocity.cell_dofs(c, vdofs);
    pressure.cell_dofs(c, std::span(pdofs.data(), npc));
    for (std::size_t k = 0; k < npc; ++k) {
      for (std::size_t j = 0; j < 12; ++j) triplets.emplace_back(pdofs[k], vdofs[j], local(k, j));
    }
  }
  return {from_triplets(static_cast<Eigen::Index>(pressure.dof_count()), static_cast<Eigen::Index>(velocity.dof_count()),
                        triplets),
          false};
}

SparseMatrix assemble_mass(const FESpace& pressure) {
  require_pressure(pressure);
  const Mesh2D& mesh = pressure.mesh();
  const QuadratureRule rule = QuadratureRule::symmetric_degree4();
  const std::size_t npc = pressure.dofs_per_cell();
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_cells() * npc * npc);
  std::array<std::size_t, 3> dofs{};
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh.cell_points(c));
    pressure.cell_dofs(c, std::span(dofs.data(), npc));
    for (std::size_t i = 0; i < npc; ++i) {
      for (std::size_t j = 0; j < npc; ++j) {
        double value = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          value += rule.weights[q] * pressure_shape(pressure.kind(), i, rule.points[q]) *
                   pressure_shape(pressure.kind(), j, rule.points[q]);
        }
        triplets.emplace_back(dofs[i], dofs[j], value * g.area);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(pressure.dof_count());
  return {from_triplets(n, n, triplets), true};
}

Eigen::VectorXd assemble_load(const FESpace& velocity, const VectorField& f, const QuadratureRule& rule) {
  require_velocity(velocity);
  const Mesh2D& mesh = velocity.mesh();
  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(velocity.dof_count()));
  std::array<std::size_t, 12> dofs{};
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh.cell_points(c));
    velocity.cell_dofs(c, dofs);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d fq = f(g.map(rule.points[q]));
      const double w = rule.weights[q] * g.area;
      for (std::size_t j = 0; j < 6; ++j) {
        const double phi = p2::value(j, rule.points[q]);
        load(static_cast<Eigen::Index>(dofs[2 * j])) += w * phi * fq.x();
        load(static_cast<Eigen::Index>(dofs[2 * j + 1])) += w * phi * fq.y();
      }
    }
  }
  return load;
}

SparseMat select(const SparseMat& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  std::vector<Eigen::Index> row_map(static_cast<std::size_t>(m.rows()), -1);
  std::vector<Eigen::Index> col_map(static_cast<std::size_t>(m.cols()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_map[rows[i]] = static_cast<Eigen::Index>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) col_map[cols[j]] = static_cast<Eigen::Index>(j);
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Eigen::Index outer = 0; outer < m.outerSize(); ++outer) {
    for (SparseMat::InnerIterator it(m, outer); it; ++it) {
      const Eigen::Index r = row_map[static_cast<std::size_t>(it.row())];
      const Eigen::Index c = col_map[static_cast<std::size_t>(it.col())];
      if (r >= 0 && c >= 0) triplets.emplace_back(r, c, it.value());
    }
  }
  return from_triplets(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()), triplets);
}

void write_triplets(std::ostream& out, const SparseMat& m) {
  for (Eigen::Index outer = 0; outer < m.outerSize(); ++outer) {
    for (SparseMat::InnerIterator it(m, outer); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
    }
  }
}

}  // namespace svlab
