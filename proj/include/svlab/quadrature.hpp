#pragma once

#include <array>
#include <vector>

namespace svlab {

/// Rule on a triangle in barycentric coordinates. Weights sum to one, so
/// integral_T f ~= |T| * sum_q w_q f(x_q).
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }

  /// Six-point symmetric rule, exact to degree 4. Used for assembly.
  static QuadratureRule symmetric_degree4();
  /// Collapsed (Duffy) tensor Gauss-Legendre rule exact to the given degree.
  static QuadratureRule collapsed_gauss(int degree);
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace svlab
