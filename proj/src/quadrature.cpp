#include "svlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svlab {

QuadratureRule QuadratureRule::symmetric_degree4() {
  constexpr double a = 0.44594849091596488632;
  constexpr double b = 0.091576213509770743460;
  constexpr double wa = 0.22338158967801146570;
  constexpr double wb = 0.10995174365532186764;
  QuadratureRule rule;
  rule.degree = 4;
  rule.points = {{a, a, 1.0 - 2.0 * a}, {a, 1.0 - 2.0 * a, a}, {1.0 - 2.0 * a, a, a},
                 {b, b, 1.0 - 2.0 * b}, {b, 1.0 - 2.0 * b, b}, {1.0 - 2.0 * b, b, b}};
  rule.weights = {wa, wa, wa, wb, wb, wb};
  return rule;
}

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one point");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1].
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = weights[n - 1 - i] = 0.5 * w;
  }
}

QuadratureRule QuadratureRule::collapsed_gauss(int degree) {
  if (degree < 0) throw std::invalid_argument("quadrature degree must be non-negative");
  // The Duffy Jacobian (1-u) raises the u-degree by one.
  const int nu = (degree + 3) / 2;
  const int nv = (degree + 2) / 2;
  std::vector<double> u, wu, v, wv;
  gauss_legendre_unit(nu, u, wu);
  gauss_legendre_unit(nv, v, wv);
  QuadratureRule rule;
  rule.degree = degree;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double x = u[i];
      const double y = (1.0 - u[i]) * v[j];
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(2.0 * wu[i] * wv[j] * (1.0 - u[i]));
    }
  }
  return rule;
}

}  // namespace svlab
