#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "svlab/point.hpp"

namespace svlab {

/// Vertex indices of a triangle, counterclockwise for a valid mesh.
using Cell = std::array<std::size_t, 3>;

/// Edge/boundary incidence derived from the cell list. Local edge k of a cell
/// is the edge opposite its local vertex k.
struct MeshTopology {
  std::vector<std::array<std::size_t, 2>> edges;  // endpoints, smaller index first
  std::vector<std::array<std::size_t, 3>> cell_edges;
  std::vector<std::size_t> edge_incidence;  // number of cells sharing each edge
  std::vector<bool> boundary_edge;
  std::vector<bool> boundary_vertex;
};

/// Immutable conforming triangulation. Construction checks that coordinates
/// are finite and that cell indices are distinct and in range; geometric
/// validity (orientation, conformity) is reported by validate_mesh().
class Mesh2D {
 public:
  Mesh2D(std::vector<Point2> vertices, std::vector<Cell> cells,
         std::vector<std::size_t> macro_parent = {});

  std::span<const Point2> vertices() const { return vertices_; }
  std::span<const Cell> cells() const { return cells_; }
  /// Empty when the mesh does not come from a Clough-Tocher refinement.
  std::span<const std::size_t> macro_parent() const { return macro_parent_; }
  bool has_macro_parent() const { return !macro_parent_.empty(); }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_edges() const { return topology_.edges.size(); }

  Triangle cell_points(std::size_t c) const;
  double cell_area(std::size_t c) const;  // signed
  double total_area() const;
  double diameter() const;  // bounding-box diagonal

  const MeshTopology& topology() const { return topology_; }
  std::vector<std::size_t> boundary_vertices() const;

 private:
  std::vector<Point2> vertices_;
  std::vector<Cell> cells_;
  std::vector<std::size_t> macro_parent_;
  MeshTopology topology_;
};

enum class Diagonal { RightUp, LeftUp };

/// Uniform n x n grid on the unit square, each square cut along one diagonal.
Mesh2D generate_unit_square_mesh(std::size_t n, Diagonal diagonal = Diagonal::RightUp);

/// Grid abscissae of the piecewise-uniform boundary-layer mesh: N/2 cells of
/// width 2*tau/N on [0, tau], N/2 cells of width 2*(1-tau)/N on [tau, 1].
std::vector<double> shishkin_abscissae(std::size_t N, double tau);

/// Tensor Shishkin mesh of the unit square (uniform in y), 2*N*N cells.
Mesh2D generate_shishkin_mesh(std::size_t N, double tau);

/// Closed-form aspect ratio of the thin boundary-layer cells of the Shishkin mesh.
double shishkin_aspect_formula(double tau);

/// Splits every cell into three by connecting its vertices to the split point.
/// Child 3c+k shares with parent c the edge opposite local vertex k.
Mesh2D clough_tocher_refine(const Mesh2D& mesh, SplitStrategy strategy);

struct ValidationReport {
  bool conforming = true;
  std::vector<std::size_t> bad_edges;            // edges shared by more than two cells
  std::vector<std::size_t> misoriented_cells;    // signed area <= 0
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_vertices;
  bool macro_parent_ok = true;
  double total_area = 0.0;

  bool ok() const {
    return conforming && misoriented_cells.empty() && duplicate_vertices.empty() && macro_parent_ok;
  }
};

ValidationReport validate_mesh(const Mesh2D& mesh);

}  // namespace svlab
