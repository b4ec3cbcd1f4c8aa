#pragma once

#include <utility>
#include <vector>

#include "cutdg/boundary.hpp"
#include "cutdg/reconstruction.hpp"
#include "cutdg/state.hpp"

namespace cutdg {

/// Invariant range [m, M] of the scalar entropy solution.
struct ScalarBounds {
  double m = 0.0;
  double M = 1.0;
};

/// Admissible-set parameters for the Euler equations.
struct AdmissibleSetParams {
  double gamma = 1.4;
  double eps = 1e-8;  // positivity floor
};

/// Gauss-Lobatto check points per macro-element: nodes mapped to I_M plus
/// nodes mapped to each member intersection, in the owner frame. Both
/// endpoints of I_M are included.
class CheckPointSet {
 public:
  CheckPointSet(const MeshComplex& mesh, int p);
  const std::vector<double>& points(int sub, int m) const {
    return xi_[sub][m];
  }
  int lobatto_order() const { return q_; }

 private:
  int q_;
  std::vector<std::vector<std::vector<double>>> xi_;  // [sub][macro][pt]
};

/// Exact extrema of a polynomial of degree <= 3 over [xi_a, xi_b]: endpoint
/// values plus real critical points (closed-form roots of the derivative).
std::pair<double, double> exact_extrema(const PolyBasis& basis,
                                        const double* coef, double xi_a,
                                        double xi_b);
std::pair<double, double> exact_extrema(const MacroOps& ops,
                                        const MacroPolynomial& poly, int var);

/// Linear scaling about the mean forcing the polynomial into [m, M] using
/// its exact extrema over I_M. The mean is unchanged. Throws MeanOutOfBounds
/// if the mean itself is outside [m, M] by more than 1e-11.
void scalar_bound_limiter(const MacroOps& ops, MacroPolynomial& poly,
                          double mean, const ScalarBounds& bounds);

/// Two-stage positivity limiter: density scaling, then a scaling from the
/// pressure line search on the segments toward the mean. Enforces rho >= eps
/// and p >= eps at every check point; all three means are unchanged. When a
/// macro mean is closer to vacuum than eps, the enforcement floor is lowered
/// to min(eps, rho_mean, p_mean) so the scheme survives near-vacuum data.
/// Returns the enforcement floor used. Throws MeanNotAdmissible if the mean
/// leaves the admissible set.
double euler_positivity_limiter(const MacroOps& ops, MacroPolynomial& poly,
                                const double* means,
                                const AdmissibleSetParams& params,
                                const std::vector<double>& check_xi);

/// Minmod with the TVB bypass |a1| <= M_tvb h^2.
double tvb_minmod(double a1, double a2, double a3, double m_tvb, double h);

/// Componentwise TVB slope limiter on reconstructed macro-elements: where an
/// interface deviation is modified by tvb_minmod against the neighbouring
/// macro mean differences, the polynomial is replaced by the limited linear
/// one with the same mean. Ghost means at the physical boundaries come from
/// the boundary conditions.
void apply_tvb(const MacroOps& ops, DgState& s, double m_tvb,
               const BoundaryPair& bc);

}  // namespace cutdg
