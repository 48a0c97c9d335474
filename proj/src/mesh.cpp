#include "svlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "svlab/error.hpp"
#include "svlab/geometry.hpp"

namespace svlab {

namespace {

MeshTopology build_topology(std::size_t num_vertices, std::span<const Cell> cells) {
  MeshTopology topo;
  topo.cell_edges.resize(cells.size());
  std::unordered_map<std::uint64_t, std::size_t> edge_ids;
  edge_ids.reserve(cells.size() * 2);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t k = 0; k < 3; ++k) {
      std::size_t a = cells[c][(k + 1) % 3];
      std::size_t b = cells[c][(k + 2) % 3];
      if (a > b) std::swap(a, b);
      const std::uint64_t key = static_cast<std::uint64_t>(a) * num_vertices + b;
      auto [it, inserted] = edge_ids.try_emplace(key, topo.edges.size());
      if (inserted) {
        topo.edges.push_back({a, b});
        topo.edge_incidence.push_back(0);
      }
      ++topo.edge_incidence[it->second];
      topo.cell_edges[c][k] = it->second;
    }
  }
  topo.boundary_edge.resize(topo.edges.size());
  topo.boundary_vertex.assign(num_vertices, false);
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    topo.boundary_edge[e] = topo.edge_incidence[e] == 1;
    if (topo.boundary_edge[e]) {
      topo.boundary_vertex[topo.edges[e][0]] = true;
      topo.boundary_vertex[topo.edges[e][1]] = true;
    }
  }
  return topo;
}

}  // namespace

Mesh2D::Mesh2D(std::vector<Point2> vertices, std::vector<Cell> cells,
               std::vector<std::size_t> macro_parent)
    : vertices_(std::move(vertices)), cells_(std::move(cells)), macro_parent_(std::move(macro_parent)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) throw MeshError("vertex " + std::to_string(i) + " has a non-finite coordinate");
  }
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const Cell& cell = cells_[c];
    for (std::size_t v : cell) {
      if (v >= vertices_.size()) {
        throw MeshError("cell " + std::to_string(c) + " references vertex " + std::to_string(v) +
                        " (mesh has " + std::to_string(vertices_.size()) + ")");
      }
    }
    if (cell[0] == cell[1] || cell[1] == cell[2] || cell[0] == cell[2]) {
      throw MeshError("cell " + std::to_string(c) + " repeats a vertex index");
    }
  }
  if (!macro_parent_.empty() && macro_parent_.size() != cells_.size()) {
    throw MeshError("macro_parent has " + std::to_string(macro_parent_.size()) + " entries for " +
                    std::to_string(cells_.size()) + " cells");
  }
  topology_ = build_topology(vertices_.size(), cells_);
}

Triangle Mesh2D::cell_points(std::size_t c) const {
  const Cell& cell = cells_[c];
  return {vertices_[cell[0]], vertices_[cell[1]], vertices_[cell[2]]};
}

double Mesh2D::cell_area(std::size_t c) const {
  const Triangle t = cell_points(c);
  return signed_area(t[0], t[1], t[2]);
}

double Mesh2D::total_area() const {
  double sum = 0.0;
  for (std::size_t c = 0; c < cells_.size(); ++c) sum += cell_area(c);
  return sum;
}

double Mesh2D::diameter() const {
  if (vertices_.empty()) return 0.0;
  double xmin = vertices_[0].x, xmax = xmin, ymin = vertices_[0].y, ymax = ymin;
  for (const Point2& p : vertices_) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

std::vector<std::size_t> Mesh2D::boundary_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (topology_.boundary_vertex[v]) out.push_back(v);
  }
  return out;
}

Mesh2D generate_unit_square_mesh(std::size_t n, Diagonal diagonal) {
  if (n == 0) throw MeshError("unit square mesh needs n >= 1");
  std::vector<Point2> vertices;
  vertices.reserve((n + 1) * (n + 1));
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      vertices.push_back({static_cast<double>(i) / static_cast<double>(n),
                          static_cast<double>(j) / static_cast<double>(n)});
    }
  }
  std::vector<Cell> cells;
  cells.reserve(2 * n * n);
  const std::size_t stride = n + 1;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = j * stride + i, b = a + 1, c = b + stride, d = a + stride;
      if (diagonal == Diagonal::RightUp) {
        cells.push_back({a, b, c});
        cells.push_back({a, c, d});
      } else {
        cells.push_back({a, b, d});
        cells.push_back({b, c, d});
      }
    }
  }
  return Mesh2D(std::move(vertices), std::move(cells));
}

std::vector<double> shishkin_abscissae(std::size_t N, double tau) {
  if (N < 2 || N % 2 != 0) throw MeshError("Shishkin mesh needs an even N >= 2, got " + std::to_string(N));
  if (!(tau > 0.0 && tau < 1.0)) throw MeshError("Shishkin transition point tau must lie in (0,1)");
  const std::size_t half = N / 2;
  const double n = static_cast<double>(N);
  std::vector<double> x(N + 1);
  for (std::size_t i = 0; i <= half; ++i) x[i] = static_cast<double>(i) * 2.0 * tau / n;
  for (std::size_t i = half + 1; i < N; ++i) {
    x[i] = tau + static_cast<double>(i - half) * 2.0 * (1.0 - tau) / n;
  }
  x[N] = 1.0;
  return x;
}

Mesh2D generate_shishkin_mesh(std::size_t N, double tau) {
  const std::vector<double> xs = shishkin_abscissae(N, tau);
  std::vector<Point2> vertices;
  vertices.reserve((N + 1) * (N + 1));
  for (std::size_t j = 0; j <= N; ++j) {
    const double y = static_cast<double>(j) / static_cast<double>(N);
    for (std::size_t i = 0; i <= N; ++i) vertices.push_back({xs[i], y});
  }
  std::vector<Cell> cells;
  cells.reserve(2 * N * N);
  const std::size_t stride = N + 1;
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i) {
      const std::size_t a = j * stride + i, b = a + 1, c = b + stride, d = a + stride;
      cells.push_back({a, b, c});
      cells.push_back({a, c, d});
    }
  }
  return Mesh2D(std::move(vertices), std::move(cells));
}

double shishkin_aspect_formula(double tau) {
  const double s = std::sqrt(1.0 + 4.0 * tau * tau);
  return s / (1.0 + 2.0 * tau - s);
}

Mesh2D clough_tocher_refine(const Mesh2D& mesh, SplitStrategy strategy) {
  const double diam = mesh.diameter();
  const double min_area = 1e-14 * diam * diam;
  std::vector<Point2> vertices(mesh.vertices().begin(), mesh.vertices().end());
  vertices.reserve(mesh.num_vertices() + mesh.num_cells());
  std::vector<Cell> cells;
  cells.reserve(3 * mesh.num_cells());
  std::vector<std::size_t> parent;
  parent.reserve(3 * mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double area = mesh.cell_area(c);
    if (!(area > min_area)) {
      throw MeshError("cannot refine cell " + std::to_string(c) + ": signed area " + std::to_string(area) +
                      " is below the degeneracy threshold " + std::to_string(min_area));
    }
    const Cell& cell = mesh.cells()[c];
    const std::size_t z0 = vertices.size();
    vertices.push_back(split_point(mesh.cell_points(c), strategy));
    for (std::size_t k = 0; k < 3; ++k) {
      cells.push_back({cell[(k + 1) % 3], cell[(k + 2) % 3], z0});
      parent.push_back(c);
    }
  }
  return Mesh2D(std::move(vertices), std::move(cells), std::move(parent));
}

namespace {

bool point_strictly_inside_segment(Point2 p, Point2 a, Point2 b, double tol) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return false;
  const double t = dot(p - a, d) / len2;
  if (t <= 1e-12 || t >= 1.0 - 1e-12) return false;
  return std::abs(cross(d, p - a)) / std::sqrt(len2) <= tol;
}

}  // namespace

ValidationReport validate_mesh(const Mesh2D& mesh) {
  ValidationReport report;
  const MeshTopology& topo = mesh.topology();
  const double tol = 1e-12 * mesh.diameter();

  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    if (topo.edge_incidence[e] > 2) report.bad_edges.push_back(e);
  }
  // A vertex sitting on a boundary edge is a hanging node.
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    if (!topo.boundary_edge[e]) continue;
    const Point2 a = mesh.vertices()[topo.edges[e][0]];
    const Point2 b = mesh.vertices()[topo.edges[e][1]];
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
      if (v == topo.edges[e][0] || v == topo.edges[e][1]) continue;
      if (point_strictly_inside_segment(mesh.vertices()[v], a, b, tol)) {
        report.bad_edges.push_back(e);
        break;
      }
    }
  }
  report.conforming = report.bad_edges.empty();

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double area = mesh.cell_area(c);
    if (!(area > 0.0)) report.misoriented_cells.push_back(c);
    report.total_area += area;
  }

  std::vector<std::size_t> order(mesh.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  const auto verts = mesh.vertices();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return verts[a].x < verts[b].x; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size() && verts[order[j]].x - verts[order[i]].x <= tol; ++j) {
      if (distance(verts[order[i]], verts[order[j]]) <= tol) {
        report.duplicate_vertices.emplace_back(std::min(order[i], order[j]), std::max(order[i], order[j]));
      }
    }
  }

  if (mesh.has_macro_parent()) {
    std::map<std::size_t, std::vector<std::size_t>> children;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) children[mesh.macro_parent()[c]].push_back(c);
    for (const auto& [id, kids] : children) {
      if (kids.size() != 3) {
        report.macro_parent_ok = false;
        break;
      }
      // The three children must share exactly one vertex, the split point.
      std::size_t shared = 0;
      for (std::size_t v : mesh.cells()[kids[0]]) {
        const auto& c1 = mesh.cells()[kids[1]];
        const auto& c2 = mesh.cells()[kids[2]];
        if (std::find(c1.begin(), c1.end(), v) != c1.end() && std::find(c2.begin(), c2.end(), v) != c2.end()) {
          ++shared;
        }
      }
      if (shared != 1) {
        report.macro_parent_ok = false;
        break;
      }
    }
  }
  return report;
}

}  // namespace svlab
