#pragma once

#include <vector>

namespace cutdg {

/// Quadrature rule on the unit interval [0, 1]; weights sum to 1.
struct QuadratureRule {
  enum class Kind { legendre, lobatto };
  Kind kind = Kind::legendre;
  std::vector<double> nodes;    // ascending in [0, 1]
  std::vector<double> weights;  // positive, sum 1

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n-1
/// after affine mapping to any interval.
QuadratureRule gauss_legendre(int n);

/// q-point Gauss-Lobatto rule (q >= 2), endpoints included, exact to degree
/// 2q-3. Weights are symmetric, so weights.front() == weights.back().
QuadratureRule gauss_lobatto(int q);

/// Smallest q >= 2 with 2q-3 >= p; its first normalized weight enters the
/// high-order CFL bound.
int lobatto_order_for_degree(int p);

}  // namespace cutdg
