#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "svlab/geometry.hpp"

namespace svlab::testing {

/// Random triangle whose aspect ratio equals `target` (>= 2): apex (s, t) over
/// the unit base with t found by bisection, then a random similarity and
/// vertex relabeling.
inline Triangle triangle_with_aspect(double target, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double s = -0.4 + 1.8 * unit(rng);
    auto aspect_at = [s](double t) { return aspect_ratio({Point2{0, 0}, Point2{1, 0}, Point2{s, t}}); };
    // Aspect decreases from +inf as t grows from 0 until its minimum.
    double t_min = 1e-3;
    double best = aspect_at(t_min);
    for (double t = 1e-3; t < 3.0; t *= 1.05) {
      const double a = aspect_at(t);
      if (a < best) {
        best = a;
        t_min = t;
      }
    }
    if (best >= target) continue;
    double lo = 1e-12;
    double hi = t_min;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (aspect_at(mid) > target ? lo : hi) = mid;
    }
    Triangle t{Point2{0, 0}, Point2{1, 0}, Point2{s, 0.5 * (lo + hi)}};
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const double scale = std::exp(std::log(0.1) + unit(rng) * std::log(100.0));
    const Point2 shift{2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    for (Point2& p : t) p = Point2{scale * (c * p.x - sn * p.y), scale * (sn * p.x + c * p.y)} + shift;
    const int rot = static_cast<int>(3.0 * unit(rng)) % 3;
    return Triangle{t[rot], t[(rot + 1) % 3], t[(rot + 2) % 3]};
  }
}

/// Aspect ratio log-uniform in [lo, hi].
inline Triangle random_triangle(double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return triangle_with_aspect(std::exp(u(rng)), rng);
}

}  // namespace svlab::testing
