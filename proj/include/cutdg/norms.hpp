#pragma once

#include <functional>
#include <vector>

#include "cutdg/operator.hpp"
#include "cutdg/state.hpp"

namespace cutdg {

/// Cut-aware error norms over the physical domain: L1/L2 by the operator's
/// volume rule summed over every intersection K, Linf over the quadrature
/// nodes and both endpoints of each K.
struct ErrorReport {
  std::vector<double> l1, l2, linf;  // per variable

  double l1_0() const { return l1[0]; }
  double l2_0() const { return l2[0]; }
  double linf_0() const { return linf[0]; }
};

ErrorReport compute_errors(
    const SemiDiscreteOperator& op, const DgState& s,
    const std::function<void(double, double*)>& reference);

/// log2(e_coarse / e_fine) for one refinement pair.
inline double eoc(double e_coarse, double e_fine) {
  return std::log2(e_coarse / e_fine);
}

}  // namespace cutdg
