#include "svlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "svlab/error.hpp"

namespace svlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-9;

bool le(double lhs, double rhs) { return lhs <= rhs + kSlack * std::abs(rhs); }

double angle_at(Point2 p, Point2 q, Point2 r) {
  const Point2 u = q - p;
  const Point2 v = r - p;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

}  // namespace

std::array<double, 3> triangle_angles(const Triangle& t) {
  return {angle_at(t[0], t[1], t[2]), angle_at(t[1], t[2], t[0]), angle_at(t[2], t[0], t[1])};
}

TriangleMetrics analyze_triangle(const Triangle& t) {
  for (const Point2& p : t) {
    if (!is_finite(p)) throw GeometryError("triangle has a non-finite vertex");
  }
  const std::array<double, 3> opposite = {distance(t[1], t[2]), distance(t[2], t[0]), distance(t[0], t[1])};
  const double area = std::abs(signed_area(t[0], t[1], t[2]));
  const double longest = std::max({opposite[0], opposite[1], opposite[2]});
  if (!(area > 1e-14 * longest * longest)) throw GeometryError("degenerate triangle (zero area)");

  TriangleMetrics m;
  m.vertex_order = {0, 1, 2};
  std::stable_sort(m.vertex_order.begin(), m.vertex_order.end(),
                   [&](std::size_t a, std::size_t b) { return opposite[a] < opposite[b]; });
  const std::array<double, 3> angles = triangle_angles(t);
  for (std::size_t i = 0; i < 3; ++i) {
    m.h[i] = opposite[m.vertex_order[i]];
    m.alpha[i] = angles[m.vertex_order[i]];
  }
  m.area = area;
  m.perimeter = m.h[0] + m.h[1] + m.h[2];
  m.rho_in = 4.0 * area / m.perimeter;
  m.aspect = m.perimeter * m.h[2] / (4.0 * area);
  m.a_T = 2.0 * area / m.h[2];
  return m;
}

Triangle sorted_vertices(const Triangle& t, const TriangleMetrics& m) {
  return {t[m.vertex_order[0]], t[m.vertex_order[1]], t[m.vertex_order[2]]};
}

double aspect_ratio(const Triangle& t) { return analyze_triangle(t).aspect; }

Point2 split_point(const Triangle& t, SplitStrategy strategy) {
  if (strategy == SplitStrategy::Barycenter) {
    analyze_triangle(t);  // degeneracy check
    return (t[0] + t[1] + t[2]) / 3.0;
  }
  const TriangleMetrics m = analyze_triangle(t);
  const Point2 weighted = distance(t[1], t[2]) * t[0] + distance(t[2], t[0]) * t[1] + distance(t[0], t[1]) * t[2];
  return weighted / m.perimeter;
}

SplitMetrics split_metrics(const Triangle& t, SplitStrategy strategy) {
  const TriangleMetrics m = analyze_triangle(t);
  const Triangle z = sorted_vertices(t, m);
  SplitMetrics s;
  s.z0 = split_point(t, strategy);
  for (std::size_t i = 0; i < 3; ++i) {
    const Triangle child = {z[(i + 1) % 3], z[(i + 2) % 3], s.z0};
    s.children[i] = child;
    s.child_area[i] = std::abs(signed_area(child[0], child[1], child[2]));
    s.k[i] = 2.0 * s.child_area[i] / m.h[i];
    s.child_aspect[i] = aspect_ratio(child);
    s.child_angles[i] = triangle_angles(child);
    s.max_child_angle = std::max({s.max_child_angle, s.child_angles[i][0], s.child_angles[i][1], s.child_angles[i][2]});
  }
  return s;
}

bool check_lac(const Triangle& t, double delta) {
  const TriangleMetrics m = analyze_triangle(t);
  return m.alpha[2] < kPi - delta;
}

ReferenceMap reference_map(const Triangle& t, SplitStrategy strategy) {
  const TriangleMetrics m = analyze_triangle(t);
  const Triangle z = sorted_vertices(t, m);
  ReferenceMap r;
  const Point2 t1 = (z[1] - z[2]) / m.h[0];
  const Point2 t2 = (z[0] - z[2]) / m.h[1];
  r.A << t1.x, t2.x, t1.y, t2.y;
  r.b = z[2];
  r.tilde_h = {m.h[0], m.h[1], std::hypot(m.h[0], m.h[1])};
  r.tilde_aspect = m.h[1] / m.h[0];

  const Eigen::Matrix2d A_inv = r.A.inverse();
  const Point2 d = split_point(t, strategy) - r.b;
  const Eigen::Vector2d image = A_inv * Eigen::Vector2d(d.x, d.y);
  r.split_image = {image(0), image(1)};
  r.tilde_k[0] = image(1);
  r.tilde_k[1] = image(0);
  r.tilde_k[2] = (m.h[0] * m.h[1] - m.h[1] * image(0) - m.h[0] * image(1)) / r.tilde_h[2];

  const Eigen::JacobiSVD<Eigen::Matrix2d> svd(r.A);
  const auto& sv = svd.singularValues();
  r.norm_A = sv(0);
  r.norm_A_inv = 1.0 / sv(1);
  r.norm_A_frobenius = r.A.norm();
  r.norm_A_inv_frobenius = A_inv.norm();
  return r;
}

double hat_seminorm_sq(const Triangle& t, SplitStrategy strategy) {
  const TriangleMetrics m = analyze_triangle(t);
  const SplitMetrics s = split_metrics(t, strategy);
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) sum += m.h[i] / s.k[i];
  return 0.5 * sum;
}

BoundsReport lemma_bounds_report(const Triangle& t, double lac_delta) {
  const TriangleMetrics m = analyze_triangle(t);
  const SplitMetrics inc = split_metrics(t, SplitStrategy::Incenter);
  const SplitMetrics bary = split_metrics(t, SplitStrategy::Barycenter);

  BoundsReport r;
  r.aspect = m.aspect;
  r.a_over_h = m.a_T / m.h_T();

  r.inc_aspect = inc.aspect();
  r.inc_lower = 2.0 * m.aspect;
  r.inc_upper = 2.0 * (1.0 + r.a_over_h) * m.aspect;
  r.inc_lower_ok = le(r.inc_lower, r.inc_aspect);
  r.inc_upper_ok = le(r.inc_aspect, r.inc_upper);

  r.bary_aspect = bary.aspect();
  r.bary_lower = 3.0 * m.aspect / (1.0 + r.a_over_h);
  r.bary_upper = 3.0 * m.aspect;
  r.bary_lower_ok = le(r.bary_lower, r.bary_aspect);
  r.bary_upper_ok = le(r.bary_aspect, r.bary_upper);

  const auto& gamma = bary.child_angles[2];
  r.sin_gamma1 = std::sin(gamma[0]);
  r.sin_gamma2 = std::sin(gamma[1]);
  r.sin_bound = 3.0 * r.a_over_h;
  r.sin_bounds_ok = le(r.sin_gamma1, r.sin_bound) && le(r.sin_gamma2, r.sin_bound);
  r.gamma3 = gamma[2];
  r.angle_bound = 2.0 * std::asin(std::min(1.0, r.sin_bound));
  r.angle_bound_ok = le(kPi - r.gamma3, r.angle_bound);

  r.lac_delta = lac_delta > 0.0 ? lac_delta : 0.99 * (kPi - m.alpha[2]);
  r.inc_max_child_angle = inc.max_child_angle;
  if (m.alpha[2] < kPi - r.lac_delta) {
    r.lac_inherited_ok = true;
    for (const Triangle& child : inc.children) {
      r.lac_inherited_ok = r.lac_inherited_ok && check_lac(child, 0.5 * r.lac_delta);
    }
  } else {
    r.lac_inherited_ok = true;
  }
  return r;
}

double max_aspect_ratio(const Mesh2D& mesh) {
  double worst = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) worst = std::max(worst, aspect_ratio(mesh.cell_points(c)));
  return worst;
}

}  // namespace svlab
