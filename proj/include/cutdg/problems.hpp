#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cutdg/boundary.hpp"
#include "cutdg/flux.hpp"
#include "cutdg/limiters.hpp"
#include "cutdg/operator.hpp"

namespace cutdg {

/// Complete problem definition: flux model, initial data (conserved
/// variables), physical domain, boundary conditions, invariant bounds or
/// admissible-set parameters, reference-solution handle, and the default cut
/// configuration of the experiments.
struct ProblemSpec {
  std::string name;
  FluxModel flux;
  std::function<void(double, double*)> initial;
  double x_left = 0.0, x_right = 1.0;
  BoundaryPair bc;
  std::optional<ScalarBounds> bounds;
  std::optional<AdmissibleSetParams> admissible;
  InterfaceFluxKind interface_flux = InterfaceFluxKind::lax_friedrichs;

  double cut_lo = 0.0, cut_hi = 0.0;  // default cut region (middle quarter)
  double default_alpha = 0.1;         // cap for the random cut fractions
  std::optional<double> fixed_interface_x;  // exact single interface
  bool unfitted_boundaries = false;
  double unfitted_alpha = 0.01;
  double t_end_default = 1.0;

  enum class RefKind { analytic, riemann, self, none };
  RefKind ref_kind = RefKind::none;
  std::function<void(double, double, double*)> reference;  // (x,t)->conserved

  int n_vars() const { return flux.n_vars; }
};

enum class AdvectionVariant { smooth, nonsmooth, inflow };
ProblemSpec advection_problem(AdvectionVariant variant);

ProblemSpec burgers_problem_smooth();
ProblemSpec burgers_problem_riemann(double u_left, double u_right);

/// Transport left of the interface, Burgers right of it, coupled by the
/// single-valued upwind interface flux.
ProblemSpec discontinuous_flux_problem();

enum class EulerCase { low_density, sod, double_rarefaction, sedov, two_blast };
/// n_hint sizes the energy deposition cell of the blast-wave setup.
ProblemSpec euler_problem(EulerCase which, int n_hint = 200);

ProblemSpec make_problem(const std::string& name, double riemann_left = -1.0,
                         double riemann_right = 1.0, int n_hint = 200);

/// Evaluates the problem's reference solution (conserved variables) at
/// (x, t). Throws NoReference when no handle is available.
void reference_solution(const ProblemSpec& problem, double x, double t,
                        double* out);

/// Burgers characteristic fixed point u = sin(pi (x - u t)), valid t < 1/pi.
double burgers_smooth_exact(double x, double t);

}  // namespace cutdg
