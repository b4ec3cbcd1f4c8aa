#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/mesh.hpp"

namespace cutdg {

/// DG coefficient tensor: per subdomain, per active element, per conserved
/// variable, per mode, in the orthonormal frame of the cell's background
/// element. Also carries the current time, a per-macro "single polynomial"
/// flag (set by reconstruction, preserved by limiting and by convex
/// combinations) and the accumulated boundary flux inflow used by the
/// conservation audit.
struct DgState {
  int p = 0;
  int n_vars = 1;
  double time = 0.0;
  std::vector<std::vector<double>> coeffs;          // [sub][cell*nv*(p+1)]
  std::vector<std::vector<std::uint8_t>> macro_single;  // [sub][macro]
  std::vector<double> boundary_influx;              // per var, time-integrated

  int modes() const { return p + 1; }
  double* cell(int sub, int c) {
    return coeffs[sub].data() + static_cast<std::size_t>(c) * n_vars * modes();
  }
  const double* cell(int sub, int c) const {
    return coeffs[sub].data() + static_cast<std::size_t>(c) * n_vars * modes();
  }
  double* cell_var(int sub, int c, int v) { return cell(sub, c) + v * modes(); }
  const double* cell_var(int sub, int c, int v) const {
    return cell(sub, c) + v * modes();
  }
};

DgState make_state(const MeshComplex& mesh, int p, int n_vars);

/// Evaluates all variables of the subdomain-i polynomial at xi in the frame
/// of local cell c.
void eval_cell(const DgState& s, const PolyBasis& basis, int sub, int c,
               double xi, double* out);

/// Evaluates at physical x using the unique active element of the subdomain
/// containing x.
void eval_at(const DgState& s, const MeshComplex& mesh, const PolyBasis& basis,
             double x, double* out);

/// Coefficient-wise linear combination sum_k c_k * s_k. The single-polynomial
/// flags survive when the combination is over states sharing them; the
/// audit field combines with the same coefficients.
DgState linear_combination(
    const std::vector<std::pair<double, const DgState*>>& terms);

}  // namespace cutdg
