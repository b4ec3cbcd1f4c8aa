#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cutdg {

/// Dense symmetric positive definite factorization for the small macro-element
/// blocks (dimension <= 3*(p+1)). Row-major lower-triangular Cholesky.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;

  /// Factors the SPD matrix a (row-major n x n). Returns false if a pivot is
  /// not strictly positive, leaving the factor unusable.
  bool factor(const std::vector<double>& a, int n) {
    n_ = n;
    l_ = a;
    for (int j = 0; j < n; ++j) {
      double d = l_[j * n + j];
      for (int k = 0; k < j; ++k) d -= l_[j * n + k] * l_[j * n + k];
      if (!(d > 0.0) || !std::isfinite(d)) return false;
      const double dj = std::sqrt(d);
      l_[j * n + j] = dj;
      for (int i = j + 1; i < n; ++i) {
        double s = l_[i * n + j];
        for (int k = 0; k < j; ++k) s -= l_[i * n + k] * l_[j * n + k];
        l_[i * n + j] = s / dj;
      }
    }
    return true;
  }

  /// Solves L L^T x = b in place.
  void solve(double* b) const {
    for (int i = 0; i < n_; ++i) {
      double s = b[i];
      for (int k = 0; k < i; ++k) s -= l_[i * n_ + k] * b[k];
      b[i] = s / l_[i * n_ + i];
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double s = b[i];
      for (int k = i + 1; k < n_; ++k) s -= l_[k * n_ + i] * b[k];
      b[i] = s / l_[i * n_ + i];
    }
  }

  int size() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> l_;
};

}  // namespace cutdg
