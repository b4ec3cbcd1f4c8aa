#pragma once

#include <functional>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/boundary.hpp"
#include "cutdg/flux.hpp"
#include "cutdg/linalg.hpp"
#include "cutdg/mesh.hpp"
#include "cutdg/quadrature.hpp"
#include "cutdg/state.hpp"

namespace cutdg {

/// Ghost-penalty weight variants: w_k = 1/((k!)^2 (2k+1)) (scaled, the
/// default) or w_k = 1/(k!)^2 (factorial).
enum class PenaltyWeights { scaled, factorial };

/// Coupling flux at subdomain interfaces: global Lax-Friedrichs, or the
/// left-trace flux value (the upwind choice used when the flux function
/// switches across the interface and characteristics run rightward).
enum class InterfaceFluxKind { lax_friedrichs, left_value };

/// Assembled stabilized semi-discrete operator: volume terms restricted to
/// the cut intersections, Lax-Friedrichs fluxes on interior edges and
/// subdomain interfaces, explicit J0 jump penalties on macro-interior edges,
/// and the factored per-macro mass blocks (cut mass + gamma1 * J1).
/// Immutable after assembly.
class SemiDiscreteOperator {
 public:
  SemiDiscreteOperator(const MeshComplex& mesh, FluxModel flux, int p,
                       double gamma0, double gamma1,
                       PenaltyWeights weights = PenaltyWeights::scaled,
                       InterfaceFluxKind interface_flux =
                           InterfaceFluxKind::lax_friedrichs);

  const MeshComplex& mesh() const { return *mesh_; }
  const PolyBasis& basis() const { return basis_; }
  const FluxModel& flux() const { return flux_; }
  int degree() const { return p_; }
  const QuadratureRule& volume_rule() const { return vol_rule_; }

  DgState make_state() const;

  /// Stabilized L2 projection of initial data (conserved variables).
  DgState l2_project_initial(
      const std::function<void(double, double*)>& u0) const;

  /// Maximum wave speed over macro Gauss-Lobatto points and intersection
  /// endpoints, floored at 1e-12. Throws InadmissibleState for Euler states
  /// with non-positive density or pressure at a sampled point.
  double global_lambda(const DgState& s) const;

  /// One forward Euler step of size dt: assembles the explicit side on the
  /// current state (boundary data evaluated at s.time) and back-solves the
  /// factored stabilized mass blocks. Advances time by dt and accumulates
  /// the boundary flux audit.
  DgState forward_euler_update(const DgState& s, double dt,
                               const BoundaryPair& bc, double lambda) const;

  /// Explicit right side -a(u,v) - gamma0 J0(u,v) in coefficient layout.
  /// influx[v] receives f_hat(left boundary) - f_hat(right boundary).
  void residual(const DgState& s, const BoundaryPair& bc, double lambda,
                std::vector<std::vector<double>>& r, double* influx) const;

  /// Integral of each variable over the physical domain.
  std::vector<double> total_mass(const DgState& s) const;

  /// Mean of each variable over I_M of macro m in subdomain sub.
  void macro_means(const DgState& s, int sub, int m, double* out) const;

  /// Unfactored stabilized mass block (dense, row-major), for inspection.
  std::vector<double> mass_block_dense(int sub, int m) const;

  double gamma0() const { return gamma0_; }
  double gamma1() const { return gamma1_; }
  double penalty_weight(int k) const { return wk_[k]; }

 private:
  struct CellQuad {
    std::vector<double> x;        // physical quadrature points
    std::vector<double> w;        // weights scaled by |K|
    std::vector<double> phi;      // [q][mode]
    std::vector<double> dphi_dx;  // [q][mode]
  };
  struct EdgeJump {
    // reference-derivative jump vectors per k: g[k][dim]
    std::vector<std::vector<double>> g;
  };
  struct MacroData {
    CholeskyFactor chol;
    std::vector<double> dense;  // unfactored block
    std::vector<EdgeJump> edges;
    int dim = 0;
  };

  void assemble();
  double subdomain_trace_xi(int sub, bool right) const;

  const MeshComplex* mesh_;
  FluxModel flux_;
  int p_;
  double gamma0_, gamma1_;
  PenaltyWeights weights_;
  InterfaceFluxKind iface_flux_;
  PolyBasis basis_;
  QuadratureRule vol_rule_;
  QuadratureRule mass_rule_;  // p+1 points, exact mass/means
  std::vector<double> wk_;    // penalty weights
  std::vector<double> phi0_, phi1_;              // traces at xi = 0, 1
  std::vector<std::vector<CellQuad>> cellq_;     // [sub][cell]
  std::vector<std::vector<MacroData>> macros_;   // [sub][macro]
  std::vector<std::vector<double>> trace_left_;  // [sub][mode] at sub left bound
  std::vector<std::vector<double>> trace_right_;
};

}  // namespace cutdg
