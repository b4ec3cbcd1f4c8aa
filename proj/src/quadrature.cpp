#include "cutdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cutdg {
namespace {

// Legendre polynomial P_n and derivative at x in [-1, 1].
void legendre_pd(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::legendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pd(n, x, p, dp);
      const double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_pd(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  // Enforce exact symmetry of the mapped rule.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
    const double d = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = 0.5 - d;
    rule.nodes[j] = 0.5 + d;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

QuadratureRule gauss_lobatto(int q) {
  if (q < 2) throw std::invalid_argument("gauss_lobatto: q must be >= 2");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::lobatto;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  const int n = q - 1;
  // Interior nodes are roots of P'_{q-1}; endpoints +-1.
  rule.nodes[0] = 0.0;
  rule.nodes[q - 1] = 1.0;
  for (int i = 1; i < q - 1; ++i) {
    // Initial guess between Chebyshev-Gauss-Lobatto points, Newton on P'_n.
    double x = std::cos(M_PI * i / n);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre_pd(n, x, p, dp);
      // d2p from the Legendre ODE: (1-x^2) P'' = 2x P' - n(n+1) P
      const double d2p = (2.0 * x * dp - n * (n + 1.0) * p) / (1.0 - x * x);
      const double dx = -dp / d2p;
      x += dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[q - 1 - i] = 0.5 * (1.0 + x);
  }
  for (int i = 0; i < q; ++i) {
    const double x = 2.0 * rule.nodes[i] - 1.0;
    double p, dp;
    legendre_pd(n, x, p, dp);
    rule.weights[i] = 1.0 / (n * (n + 1.0) * p * p);  // 2/(n(n+1)P^2) halved
  }
  // Symmetrize.
  for (int i = 0; i < q / 2; ++i) {
    const int j = q - 1 - i;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
    const double d = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = 0.5 - d;
    rule.nodes[j] = 0.5 + d;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.5;
  return rule;
}

int lobatto_order_for_degree(int p) {
  int q = 2;
  while (2 * q - 3 < p) ++q;
  return q;
}

}  // namespace cutdg
