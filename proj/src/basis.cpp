#include "cutdg/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "cutdg/quadrature.hpp"

namespace cutdg {

PolyBasis::PolyBasis(int degree) : p_(degree) {
  if (degree < 0 || degree > 8)
    throw std::invalid_argument("PolyBasis: degree out of range");
  const int n = p_ + 1;
  mono_.assign(n * n, 0.0);
  // Legendre recurrence in monomial form, s in [-1, 1].
  std::vector<double> pk(n, 0.0), pkm1(n, 0.0), tmp(n, 0.0);
  pkm1[0] = 1.0;
  for (int j = 0; j < n; ++j) mono_[0 * n + j] = pkm1[j];
  if (p_ >= 1) {
    pk[1] = 1.0;
    for (int j = 0; j < n; ++j) mono_[1 * n + j] = pk[j];
  }
  for (int k = 1; k < p_; ++k) {
    for (int j = 0; j < n; ++j) tmp[j] = 0.0;
    for (int j = 0; j + 1 < n; ++j) tmp[j + 1] = (2.0 * k + 1.0) * pk[j];
    for (int j = 0; j < n; ++j) tmp[j] = (tmp[j] - k * pkm1[j]) / (k + 1.0);
    pkm1 = pk;
    pk = tmp;
    for (int j = 0; j < n; ++j) mono_[(k + 1) * n + j] = pk[j];
  }
  for (int k = 0; k <= p_; ++k) {
    const double scale = std::sqrt(2.0 * k + 1.0);
    for (int j = 0; j < n; ++j) mono_[k * n + j] *= scale;
  }
  tmat_.resize(7);
  for (int d = -3; d <= 3; ++d) tmat_[d + 3] = translation_matrix(d);
}

double PolyBasis::value(int k, double xi) const {
  const int n = p_ + 1;
  const double s = 2.0 * xi - 1.0;
  double acc = 0.0;
  for (int j = p_; j >= 0; --j) acc = acc * s + mono_[k * n + j];
  return acc;
}

double PolyBasis::deriv(int k, double xi, int order) const {
  if (order == 0) return value(k, xi);
  if (order > p_) return 0.0;
  const int n = p_ + 1;
  const double s = 2.0 * xi - 1.0;
  double acc = 0.0;
  for (int j = p_; j >= order; --j) {
    double fall = 1.0;
    for (int m = 0; m < order; ++m) fall *= (j - m);
    acc = acc * s + mono_[k * n + j] * fall;
  }
  // d/dxi = 2 d/ds
  double scale = 1.0;
  for (int m = 0; m < order; ++m) scale *= 2.0;
  return acc * scale;
}

void PolyBasis::eval_all(double xi, double* out) const {
  for (int k = 0; k <= p_; ++k) out[k] = value(k, xi);
}

void PolyBasis::deriv_all(double xi, int order, double* out) const {
  for (int k = 0; k <= p_; ++k) out[k] = deriv(k, xi, order);
}

std::vector<double> PolyBasis::translation_matrix(int d) const {
  const int n = p_ + 1;
  std::vector<double> t(n * n, 0.0);
  // Project phi_m(xi - d) onto the orthonormal frame; (p+1)-point Gauss is
  // exact for the degree-2p integrands.
  const QuadratureRule rule = gauss_legendre(n);
  for (int q = 0; q < rule.size(); ++q) {
    const double xi = rule.nodes[q];
    const double w = rule.weights[q];
    for (int nn = 0; nn < n; ++nn) {
      const double vn = value(nn, xi);
      for (int m = 0; m < n; ++m)
        t[nn * n + m] += w * vn * value(m, xi - d);
    }
  }
  if (d == 0) {
    // identity, exactly
    for (int i = 0; i < n * n; ++i) t[i] = 0.0;
    for (int i = 0; i < n; ++i) t[i * n + i] = 1.0;
  }
  return t;
}

void PolyBasis::translate(const double* coef, int d, double* out) const {
  const int n = p_ + 1;
  const std::vector<double>& t = tmat_.at(d + 3);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) acc += t[i * n + m] * coef[m];
    out[i] = acc;
  }
}

}  // namespace cutdg
