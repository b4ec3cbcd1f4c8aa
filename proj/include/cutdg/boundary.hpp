#pragma once

#include <functional>

#include "cutdg/flux.hpp"

namespace cutdg {

/// Weakly imposed boundary condition: supplies the ghost state fed to the
/// numerical flux at a domain boundary.
struct BoundaryCondition {
  enum class Kind { periodic, outflow, inflow, wall };
  Kind kind = Kind::periodic;
  std::function<double(double)> inflow_value;  // scalar g(t)
};

struct BoundaryPair {
  BoundaryCondition left, right;
};

inline BoundaryCondition periodic_bc() { return {}; }
inline BoundaryCondition outflow_bc() {
  return {BoundaryCondition::Kind::outflow, nullptr};
}
inline BoundaryCondition inflow_bc(std::function<double(double)> g) {
  return {BoundaryCondition::Kind::inflow, std::move(g)};
}
inline BoundaryCondition wall_bc() {
  return {BoundaryCondition::Kind::wall, nullptr};
}

inline BoundaryPair periodic_pair() { return {periodic_bc(), periodic_bc()}; }
inline BoundaryPair outflow_pair() { return {outflow_bc(), outflow_bc()}; }
inline BoundaryPair wall_pair() { return {wall_bc(), wall_bc()}; }

/// Ghost state for one boundary. `interior` is the trace of the interior
/// solution at the boundary, `opposite` the trace at the other end of the
/// domain (used by periodic). Wall mirrors the momentum of a 3-variable
/// state.
inline void ghost_state(const BoundaryCondition& bc, const double* interior,
                        const double* opposite, double t, int n_vars,
                        double* out) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::periodic:
      for (int v = 0; v < n_vars; ++v) out[v] = opposite[v];
      break;
    case BoundaryCondition::Kind::outflow:
      for (int v = 0; v < n_vars; ++v) out[v] = interior[v];
      break;
    case BoundaryCondition::Kind::inflow:
      out[0] = bc.inflow_value(t);
      for (int v = 1; v < n_vars; ++v) out[v] = interior[v];
      break;
    case BoundaryCondition::Kind::wall:
      for (int v = 0; v < n_vars; ++v) out[v] = interior[v];
      if (n_vars >= 2) out[1] = -interior[1];
      break;
  }
}

}  // namespace cutdg
