#pragma once

#include <vector>

namespace cutdg {

/// Orthonormal Legendre basis of degree p on the reference interval [0, 1]:
/// phi_k(xi) = sqrt(2k+1) P_k(2 xi - 1), so the reference mass matrix is the
/// identity. Polynomials attached to a background element live on the whole
/// element and are evaluated in this frame; cut integrals just restrict the
/// quadrature interval.
class PolyBasis {
 public:
  explicit PolyBasis(int degree);

  int degree() const { return p_; }
  int size() const { return p_ + 1; }

  /// phi_k(xi); xi may lie outside [0, 1] (polynomial extension).
  double value(int k, double xi) const;

  /// d^order/dxi^order phi_k(xi).
  double deriv(int k, double xi, int order) const;

  /// Fills out[0..p] with phi_k(xi).
  void eval_all(double xi, double* out) const;

  /// Fills out[0..p] with the order-th xi-derivative of each phi_k.
  void deriv_all(double xi, int order, double* out) const;

  /// Change of frame under the integer translation xi -> xi - d (one
  /// background element to another, uniform mesh): coefficients c expressed
  /// in the frame of an element offset by d elements. Exact for degree <= p.
  /// result = T(d) * c with phi_m(xi - d) = sum_n T[n][m] phi_n(xi).
  std::vector<double> translation_matrix(int d) const;

  /// Applies translation_matrix(d) to a coefficient block.
  void translate(const double* coef, int d, double* out) const;

 private:
  int p_;
  // monomial coefficients of phi_k in s = 2 xi - 1, row k
  std::vector<double> mono_;
  // cached translation matrices for |d| <= 3, row-major (p+1)^2
  std::vector<std::vector<double>> tmat_;
};

}  // namespace cutdg
