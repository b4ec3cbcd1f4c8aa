#include "cutdg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "cutdg/exceptions.hpp"
#include "cutdg/riemann.hpp"

namespace cutdg {

namespace {
constexpr double kGamma = 1.4;

double wrap_unit(double x) {
  double f = x - std::floor(x);
  if (f < 0.0) f += 1.0;
  return f;
}

void prim_to_cons(double rho, double u, double p, double* out) {
  out[0] = rho;
  out[1] = rho * u;
  out[2] = p / (kGamma - 1.0) + 0.5 * rho * u * u;
}

void middle_quarter(ProblemSpec& ps) {
  const double len = ps.x_right - ps.x_left;
  ps.cut_lo = ps.x_left + 0.375 * len;
  ps.cut_hi = ps.x_left + 0.625 * len;
}

}  // namespace

double burgers_smooth_exact(double x, double t) {
  // safeguarded Newton on g(u) = u - sin(pi (x - u t))
  double lo = -1.0, hi = 1.0;
  double u = std::sin(M_PI * x);
  for (int it = 0; it < 100; ++it) {
    const double s = std::sin(M_PI * (x - u * t));
    const double g = u - s;
    if (g > 0.0)
      hi = u;
    else
      lo = u;
    const double dg = 1.0 + M_PI * t * std::cos(M_PI * (x - u * t));
    double un = u - g / dg;
    if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
    if (std::abs(un - u) < 1e-15) return un;
    u = un;
  }
  return u;
}

ProblemSpec advection_problem(AdvectionVariant variant) {
  ProblemSpec ps;
  ps.flux = advection_flux();
  ps.ref_kind = ProblemSpec::RefKind::analytic;
  switch (variant) {
    case AdvectionVariant::smooth:
      ps.name = "advection_smooth";
      ps.x_left = 0.0;
      ps.x_right = 2.0;
      ps.bc = periodic_pair();
      ps.bounds = ScalarBounds{0.5, 1.5};
      ps.initial = [](double x, double* u) {
        u[0] = 1.0 + 0.5 * std::sin(M_PI * x);
      };
      ps.reference = [](double x, double t, double* u) {
        u[0] = 1.0 + 0.5 * std::sin(M_PI * (x - t));
      };
      ps.default_alpha = 0.1;
      ps.t_end_default = 1.0;
      break;
    case AdvectionVariant::nonsmooth:
      ps.name = "advection_nonsmooth";
      ps.x_left = 0.0;
      ps.x_right = 1.0;
      ps.bc = periodic_pair();
      ps.bounds = ScalarBounds{0.0, 1.0};
      ps.initial = [](double x, double* u) {
        u[0] = (x > 0.1 && x < 0.5) ? 1.0 : 0.0;
      };
      ps.reference = [](double x, double t, double* u) {
        const double y = wrap_unit(x - t);
        u[0] = (y > 0.1 && y < 0.5) ? 1.0 : 0.0;
      };
      ps.default_alpha = 0.1;
      ps.t_end_default = 1.0;
      break;
    case AdvectionVariant::inflow:
      ps.name = "advection_inflow";
      ps.x_left = 0.0;
      ps.x_right = 1.0;
      ps.bc.left = inflow_bc([](double t) { return t <= 0.5 ? 1.0 : 0.0; });
      ps.bc.right = outflow_bc();
      ps.bounds = ScalarBounds{0.0, 1.0};
      ps.initial = [](double, double* u) { u[0] = 0.0; };
      ps.reference = [](double x, double t, double* u) {
        const double tau = t - x;
        u[0] = (tau >= 0.0 && tau <= 0.5) ? 1.0 : 0.0;
      };
      ps.unfitted_boundaries = true;
      ps.unfitted_alpha = 0.01;
      ps.t_end_default = 0.75;
      break;
  }
  middle_quarter(ps);
  return ps;
}

ProblemSpec burgers_problem_smooth() {
  ProblemSpec ps;
  ps.name = "burgers_smooth";
  ps.flux = burgers_flux();
  ps.x_left = 0.0;
  ps.x_right = 2.0;
  ps.bc = periodic_pair();
  ps.bounds = ScalarBounds{-1.0, 1.0};
  ps.initial = [](double x, double* u) { u[0] = std::sin(M_PI * x); };
  ps.ref_kind = ProblemSpec::RefKind::analytic;
  ps.reference = [](double x, double t, double* u) {
    if (t >= 1.0 / M_PI)
      throw NoReference("smooth Burgers solution only valid before t=1/pi");
    // reduce to one period around the stagnation structure
    u[0] = burgers_smooth_exact(x - 2.0 * std::floor(x / 2.0), t);
  };
  ps.default_alpha = 0.1;
  ps.t_end_default = 0.2;
  middle_quarter(ps);
  return ps;
}

ProblemSpec burgers_problem_riemann(double u_left, double u_right) {
  ProblemSpec ps;
  ps.name = "burgers_riemann";
  ps.flux = burgers_flux();
  ps.x_left = -2.0;
  ps.x_right = 2.0;
  ps.bc = outflow_pair();
  ps.bounds = ScalarBounds{std::min(u_left, u_right),
                           std::max(u_left, u_right)};
  ps.initial = [=](double x, double* u) { u[0] = x <= 0.0 ? u_left : u_right; };
  ps.ref_kind = ProblemSpec::RefKind::analytic;
  if (u_left <= u_right) {
    ps.reference = [=](double x, double t, double* u) {
      if (t <= 0.0) {
        u[0] = x <= 0.0 ? u_left : u_right;
        return;
      }
      u[0] = std::clamp(x / t, u_left, u_right);
    };
  } else {
    const double s = 0.5 * (u_left + u_right);  // Rankine-Hugoniot speed
    ps.reference = [=](double x, double t, double* u) {
      u[0] = x <= s * t ? u_left : u_right;
    };
  }
  ps.default_alpha = 0.1;
  ps.t_end_default = 0.5;
  middle_quarter(ps);
  return ps;
}

ProblemSpec discontinuous_flux_problem() {
  ProblemSpec ps;
  ps.name = "discontinuous_flux";
  const double x_gamma = 2e-5;
  ps.flux = interface_switch_flux(x_gamma);
  ps.x_left = -1.0;
  ps.x_right = 1.0;
  ps.bc.left = inflow_bc([](double) { return 0.5; });
  ps.bc.right = outflow_bc();
  ps.bounds = ScalarBounds{0.5, 2.0};
  ps.initial = [](double x, double* u) { u[0] = x < -0.5 ? 0.5 : 2.0; };
  ps.interface_flux = InterfaceFluxKind::left_value;
  ps.fixed_interface_x = x_gamma;
  ps.ref_kind = ProblemSpec::RefKind::none;
  ps.t_end_default = 0.9;
  middle_quarter(ps);
  return ps;
}

ProblemSpec euler_problem(EulerCase which, int n_hint) {
  ProblemSpec ps;
  ps.flux = euler_flux(kGamma);
  ps.admissible = AdmissibleSetParams{kGamma, 1e-8};
  ps.default_alpha = 0.01;
  switch (which) {
    case EulerCase::low_density: {
      ps.name = "euler_low_density";
      ps.x_left = 0.0;
      ps.x_right = 2.0 * M_PI;
      ps.bc = periodic_pair();
      ps.initial = [](double x, double* u) {
        prim_to_cons(1.0 + 0.99 * std::sin(x), 1.0, 1.0, u);
      };
      ps.ref_kind = ProblemSpec::RefKind::analytic;
      ps.reference = [](double x, double t, double* u) {
        prim_to_cons(1.0 + 0.99 * std::sin(x - t), 1.0, 1.0, u);
      };
      ps.t_end_default = 1.0;
      break;
    }
    case EulerCase::sod: {
      ps.name = "euler_sod";
      ps.x_left = 0.0;
      ps.x_right = 1.0;
      ps.bc = outflow_pair();
      ps.initial = [](double x, double* u) {
        if (x <= 0.5)
          prim_to_cons(1.0, 0.0, 1.0, u);
        else
          prim_to_cons(0.125, 0.0, 0.1, u);
      };
      ps.ref_kind = ProblemSpec::RefKind::riemann;
      auto solver = std::make_shared<EulerRiemannSolver>(
          PrimitiveState{1.0, 0.0, 1.0}, PrimitiveState{0.125, 0.0, 0.1},
          kGamma, 0.5);
      ps.reference = [solver](double x, double t, double* u) {
        solver->sample(x, t, u);
      };
      ps.t_end_default = 0.2;
      break;
    }
    case EulerCase::double_rarefaction: {
      ps.name = "euler_double_rarefaction";
      ps.x_left = -1.0;
      ps.x_right = 1.0;
      ps.bc = outflow_pair();
      ps.initial = [](double x, double* u) {
        if (x <= 0.0)
          prim_to_cons(7.0, -1.0, 0.2, u);
        else
          prim_to_cons(7.0, 1.0, 0.2, u);
      };
      ps.ref_kind = ProblemSpec::RefKind::riemann;
      auto solver = std::make_shared<EulerRiemannSolver>(
          PrimitiveState{7.0, -1.0, 0.2}, PrimitiveState{7.0, 1.0, 0.2},
          kGamma, 0.0);
      ps.reference = [solver](double x, double t, double* u) {
        solver->sample(x, t, u);
      };
      ps.t_end_default = 0.6;
      break;
    }
    case EulerCase::sedov: {
      ps.name = "euler_sedov";
      ps.x_left = -2.0;
      ps.x_right = 2.0;
      ps.bc = outflow_pair();
      const double h = 4.0 / n_hint;
      ps.initial = [h](double x, double* u) {
        u[0] = 1.0;
        u[1] = 0.0;
        u[2] = (x >= 0.0 && x <= h) ? 3.2e6 : 1e-12;
      };
      ps.ref_kind = ProblemSpec::RefKind::none;
      ps.t_end_default = 0.001;
      break;
    }
    case EulerCase::two_blast: {
      ps.name = "euler_two_blast";
      ps.x_left = 0.0;
      ps.x_right = 1.0;
      ps.bc = wall_pair();
      ps.initial = [](double x, double* u) {
        double p = 1e-2;
        if (x < 0.1)
          p = 1e3;
        else if (x > 0.9)
          p = 1e2;
        prim_to_cons(1.0, 0.0, p, u);
      };
      ps.unfitted_boundaries = true;
      ps.unfitted_alpha = 0.01;
      ps.ref_kind = ProblemSpec::RefKind::self;
      ps.t_end_default = 0.038;
      break;
    }
  }
  middle_quarter(ps);
  return ps;
}

ProblemSpec make_problem(const std::string& name, double riemann_left,
                         double riemann_right, int n_hint) {
  if (name == "advection_smooth")
    return advection_problem(AdvectionVariant::smooth);
  if (name == "advection_nonsmooth")
    return advection_problem(AdvectionVariant::nonsmooth);
  if (name == "advection_inflow")
    return advection_problem(AdvectionVariant::inflow);
  if (name == "burgers_smooth") return burgers_problem_smooth();
  if (name == "burgers_riemann")
    return burgers_problem_riemann(riemann_left, riemann_right);
  if (name == "discontinuous_flux") return discontinuous_flux_problem();
  if (name == "euler_low_density")
    return euler_problem(EulerCase::low_density, n_hint);
  if (name == "euler_sod") return euler_problem(EulerCase::sod, n_hint);
  if (name == "euler_double_rarefaction")
    return euler_problem(EulerCase::double_rarefaction, n_hint);
  if (name == "euler_sedov") return euler_problem(EulerCase::sedov, n_hint);
  if (name == "euler_two_blast")
    return euler_problem(EulerCase::two_blast, n_hint);
  throw ConfigError("unknown problem: " + name);
}

void reference_solution(const ProblemSpec& problem, double x, double t,
                        double* out) {
  if (!problem.reference)
    throw NoReference("problem " + problem.name + " has no reference handle");
  problem.reference(x, t, out);
}

}  // namespace cutdg
