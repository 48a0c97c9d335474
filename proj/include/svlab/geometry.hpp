#pragma once

#include <array>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

#include "svlab/mesh.hpp"
#include "svlab/point.hpp"

namespace svlab {

/// Metrics of one triangle using the sorted labeling h1 <= h2 <= h3, where
/// edge e_i is opposite vertex z_i and alpha_i is the angle at z_i.
struct TriangleMetrics {
  std::array<double, 3> h{};
  std::array<double, 3> alpha{};
  double area = 0.0;
  double perimeter = 0.0;
  double rho_in = 0.0;  // incircle diameter
  double aspect = 0.0;  // h3 / rho_in
  double a_T = 0.0;     // altitude onto the longest edge
  /// vertex_order[i] is the input index of z_i. Ties go to the lower input index.
  std::array<std::size_t, 3> vertex_order{};

  double h_T() const { return h[2]; }
};

TriangleMetrics analyze_triangle(const Triangle& t);
inline TriangleMetrics analyze_triangle(Point2 p1, Point2 p2, Point2 p3) { return analyze_triangle({p1, p2, p3}); }

/// Vertices reordered so that z[i] is opposite the i-th shortest edge.
Triangle sorted_vertices(const Triangle& t, const TriangleMetrics& m);

Point2 split_point(const Triangle& t, SplitStrategy strategy);

/// Interior angles of t at its three vertices (input order), via atan2.
std::array<double, 3> triangle_angles(const Triangle& t);

/// Aspect ratio |dT| h_T / (4|T|); throws GeometryError for degenerate input.
double aspect_ratio(const Triangle& t);

/// Clough-Tocher split of one triangle. Children are labeled so that K_i
/// shares edge e_i with the parent: K_i = (z_{i+1}, z_{i+2}, z0).
struct SplitMetrics {
  Point2 z0;
  std::array<Triangle, 3> children{};
  std::array<double, 3> child_area{};
  std::array<double, 3> k{};  // altitude of K_i onto e_i
  std::array<double, 3> child_aspect{};
  /// Angles of K_i at z_{i+1}, z_{i+2} and z0.
  std::array<std::array<double, 3>, 3> child_angles{};
  double max_child_angle = 0.0;

  double aspect() const { return std::max({child_aspect[0], child_aspect[1], child_aspect[2]}); }
};

SplitMetrics split_metrics(const Triangle& t, SplitStrategy strategy);

/// Large angle condition: every angle strictly below pi - delta.
bool check_lac(const Triangle& t, double delta);

/// Affine map x = A xt + b taking the right triangle with vertices
/// (0,0), (h1,0), (0,h2) onto t (z3, z2, z1 respectively).
struct ReferenceMap {
  Eigen::Matrix2d A;
  Point2 b;
  std::array<double, 3> tilde_h{};
  /// Preimage of the split point, (k~2, k~1).
  Point2 split_image;
  /// Altitudes k~1, k~2, k~3 of the mapped children onto the reference edges.
  std::array<double, 3> tilde_k{};
  double tilde_aspect = 0.0;  // h~2 / h~1
  double norm_A = 0.0;        // spectral
  double norm_A_inv = 0.0;    // spectral
  double norm_A_frobenius = 0.0;
  double norm_A_inv_frobenius = 0.0;

  Point2 apply(Point2 xt) const {
    return {A(0, 0) * xt.x + A(0, 1) * xt.y + b.x, A(1, 0) * xt.x + A(1, 1) * xt.y + b.y};
  }
};

ReferenceMap reference_map(const Triangle& t, SplitStrategy strategy);

/// Squared H1 seminorm of the piecewise-linear hat function of the split
/// point, (1/2) sum_i h_i / k_i.
double hat_seminorm_sq(const Triangle& t, SplitStrategy strategy);

/// Evaluation of the aspect-ratio and angle bounds for incenter and
/// barycenter splits of one triangle. All comparisons carry a relative slack
/// of 1e-9.
struct BoundsReport {
  double aspect = 0.0;
  double a_over_h = 0.0;

  double inc_aspect = 0.0;
  double inc_lower = 0.0;  // 2 rho
  double inc_upper = 0.0;  // 2 (1 + a/h) rho
  double bary_aspect = 0.0;
  double bary_lower = 0.0;  // 3 rho / (1 + a/h)
  double bary_upper = 0.0;  // 3 rho

  // Barycenter child sharing the longest edge: angles at z1, z2 and z0.
  double sin_gamma1 = 0.0;
  double sin_gamma2 = 0.0;
  double sin_bound = 0.0;  // 3 a / h
  double gamma3 = 0.0;
  double angle_bound = 0.0;  // 2 asin(min(1, 3 a / h)), bound on pi - gamma3

  double lac_delta = 0.0;
  double inc_max_child_angle = 0.0;

  bool inc_lower_ok = false;
  bool inc_upper_ok = false;
  bool bary_lower_ok = false;
  bool bary_upper_ok = false;
  bool sin_bounds_ok = false;
  bool angle_bound_ok = false;
  bool lac_inherited_ok = false;  // vacuously true when the parent fails LAC(delta)

  bool all_ok() const {
    return inc_lower_ok && inc_upper_ok && bary_lower_ok && bary_upper_ok && sin_bounds_ok && angle_bound_ok &&
           lac_inherited_ok;
  }
};

/// lac_delta <= 0 selects 0.99 * (pi - alpha3), the tightest admissible delta.
BoundsReport lemma_bounds_report(const Triangle& t, double lac_delta = 0.0);

/// Largest cell aspect ratio over the mesh.
double max_aspect_ratio(const Mesh2D& mesh);

}  // namespace svlab
