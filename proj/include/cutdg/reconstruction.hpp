#pragma once

#include <functional>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/mesh.hpp"
#include "cutdg/state.hpp"

namespace cutdg {

/// One polynomial of degree <= p valid on a whole macro-element, expressed in
/// the owner element's frame (the large-intersection element, which keeps the
/// change of basis well conditioned). I_M maps to [xi_a, xi_b] in that frame.
struct MacroPolynomial {
  int sub = 0;
  int macro = 0;
  double xi_a = 0.0;
  double xi_b = 1.0;
  std::vector<double> coef;  // [var][mode]
};

enum class ReconstructionMode { all, on_violation, off };

/// Macro-element polynomial operations: extension to the owner frame, the
/// conservative convex-weighted reconstruction, restriction write-back, and
/// exact means. All integrals use Gauss rules of exact degree, so the
/// conservation identities hold to round-off.
class MacroOps {
 public:
  MacroOps(const MeshComplex& mesh, int p, int n_vars);

  const MeshComplex& mesh() const { return *mesh_; }
  const PolyBasis& basis() const { return basis_; }
  int degree() const { return p_; }
  int n_vars() const { return nv_; }

  /// Element offset of member j relative to the macro owner.
  int member_offset(int sub, int m, int j) const;

  /// Convex-weighted extension with the conservation-restoring constant.
  MacroPolynomial reconstruct(const DgState& s, int sub, int m) const;

  /// Reads the macro polynomial of a macro-element whose members already
  /// carry restrictions of one polynomial (the owner's coefficients).
  MacroPolynomial extract(const DgState& s, int sub, int m) const;

  /// Replaces every member's coefficients by the restriction of poly and
  /// marks the macro as single-polynomial.
  void write_back(DgState& s, const MacroPolynomial& poly) const;

  /// Mean of one variable of poly over I_M.
  double poly_mean(const MacroPolynomial& poly, int var) const;

  double poly_eval(const MacroPolynomial& poly, int var, double xi) const;

  /// Means over I_M of the (possibly discontinuous) state on macro m.
  void state_macro_means(const DgState& s, int sub, int m, double* out) const;

  /// Physical coordinate -> owner frame of macro m.
  double to_owner_xi(int sub, int m, double x) const;

 private:
  const MeshComplex* mesh_;
  PolyBasis basis_;
  int p_, nv_;
  std::vector<std::vector<std::vector<double>>> int_k_;   // [sub][cell][mode]
  std::vector<std::vector<std::vector<double>>> int_im_;  // [sub][macro][mode]
};

/// Polynomial extension: re-expression of a member polynomial in the frame of
/// an element `offset` elements away; pointwise values are unchanged.
std::vector<double> extend(const PolyBasis& basis,
                           const std::vector<double>& member_coef, int offset);

/// Replaces member coefficients by macro-polynomial restrictions: every
/// macro-element in mode `all`, only those flagged by `detector` in mode
/// `on_violation`, none in mode `off`. Total mass is unchanged.
void apply_reconstruction(
    const MacroOps& ops, DgState& s, ReconstructionMode mode,
    const std::function<bool(int, int)>& detector = nullptr);

}  // namespace cutdg
