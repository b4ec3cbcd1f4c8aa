#pragma once

#include <array>
#include <cmath>

#include "cutdg/exceptions.hpp"

namespace cutdg {

inline constexpr int kMaxVars = 3;

/// Ideal-gas pressure p = (gamma-1)(E - m^2/(2 rho)).
inline double pressure(const double* u, double gamma) {
  if (u[0] == 0.0) throw InadmissibleState("pressure: zero density");
  return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

/// Flux function and wave-speed estimator of one conservation law. The
/// interface_switch kind carries a piecewise-in-x flux: transport for
/// x < x_split, Burgers for x > x_split.
struct FluxModel {
  enum class Kind { advection, burgers, euler, interface_switch };
  Kind kind = Kind::advection;
  int n_vars = 1;
  double gamma = 1.4;    // euler only
  double x_split = 0.0;  // interface_switch only

  void eval(double x, const double* u, double* f) const {
    switch (kind) {
      case Kind::advection:
        f[0] = u[0];
        break;
      case Kind::burgers:
        f[0] = 0.5 * u[0] * u[0];
        break;
      case Kind::interface_switch:
        f[0] = x < x_split ? u[0] : 0.5 * u[0] * u[0];
        break;
      case Kind::euler: {
        const double p = pressure(u, gamma);
        const double vel = u[1] / u[0];
        f[0] = u[1];
        f[1] = u[1] * vel + p;
        f[2] = (u[2] + p) * vel;
        break;
      }
    }
  }

  /// Local bound on |f'(u)| (scalar) or |u| + c (Euler).
  double wave_speed(double x, const double* u) const {
    switch (kind) {
      case Kind::advection:
        return 1.0;
      case Kind::burgers:
        return std::abs(u[0]);
      case Kind::interface_switch:
        return x < x_split ? 1.0 : std::abs(u[0]);
      case Kind::euler: {
        const double p = pressure(u, gamma);
        if (!(u[0] > 0.0) || !(p > 0.0))
          throw InadmissibleState("wave_speed: state outside admissible set");
        return std::abs(u[1] / u[0]) + std::sqrt(gamma * p / u[0]);
      }
    }
    return 0.0;
  }

  bool nonlinear() const { return kind != Kind::advection; }
};

inline FluxModel advection_flux() { return {FluxModel::Kind::advection, 1}; }
inline FluxModel burgers_flux() { return {FluxModel::Kind::burgers, 1}; }
inline FluxModel euler_flux(double gamma) {
  FluxModel f;
  f.kind = FluxModel::Kind::euler;
  f.n_vars = 3;
  f.gamma = gamma;
  return f;
}
inline FluxModel interface_switch_flux(double x_split) {
  FluxModel f;
  f.kind = FluxModel::Kind::interface_switch;
  f.n_vars = 1;
  f.x_split = x_split;
  return f;
}

/// Global Lax-Friedrichs flux 0.5 (f(uL)+f(uR)) - 0.5 lambda (uR - uL),
/// componentwise; both traces use the flux at the same coordinate x.
inline void lax_friedrichs_flux(const FluxModel& flux, double x,
                                const double* ul, const double* ur,
                                double lambda, double* out) {
  double fl[kMaxVars], fr[kMaxVars];
  flux.eval(x, ul, fl);
  flux.eval(x, ur, fr);
  for (int v = 0; v < flux.n_vars; ++v)
    out[v] = 0.5 * (fl[v] + fr[v]) - 0.5 * lambda * (ur[v] - ul[v]);
}

}  // namespace cutdg
