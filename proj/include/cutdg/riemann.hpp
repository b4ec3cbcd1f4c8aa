#pragma once

namespace cutdg {

/// Primitive state (rho, u, p) for the gas-dynamics Riemann problem.
struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

/// Exact solver for the ideal-gas Riemann problem: classical two-wave
/// pressure-function iteration (Newton with a bisection safeguard, relative
/// tolerance 1e-12), including the near-vacuum double-rarefaction regime.
class EulerRiemannSolver {
 public:
  EulerRiemannSolver(PrimitiveState left, PrimitiveState right, double gamma,
                     double x0 = 0.0);

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }
  bool vacuum() const { return vacuum_; }

  /// Self-similar solution at (x, t); at t = 0 returns the initial data with
  /// x <= x0 mapping to the left state. Fills conserved variables
  /// (rho, momentum, total energy).
  void sample(double x, double t, double* cons) const;

  void sample_primitive(double x, double t, PrimitiveState& out) const;

 private:
  PrimitiveState l_, r_;
  double gamma_, x0_;
  double cl_, cr_;
  double p_star_ = 0.0, u_star_ = 0.0;
  bool vacuum_ = false;
};

}  // namespace cutdg
