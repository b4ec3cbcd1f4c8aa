#include "cutdg/time_integration.hpp"

#include <algorithm>
#include <cmath>

#include "cutdg/exceptions.hpp"
#include "cutdg/quadrature.hpp"

namespace cutdg {

double compute_dt(int p, double delta, double h, double lambda, double cfl,
                  double dt_exponent) {
  if (!(lambda > 0.0)) throw ConfigError("compute_dt: lambda must be > 0");
  double w = 1.0;
  if (p >= 1) {
    const QuadratureRule gl = gauss_lobatto(lobatto_order_for_degree(p));
    w = gl.weights.front();
  }
  return cfl * delta * std::pow(h, dt_exponent) * w / lambda;
}

DgState ssp_rk3_step(const DgState& u, double dt, const EulerStepFn& fe,
                     const PostProcessFn& post) {
  const double t0 = u.time;
  DgState u1 = fe(u, t0, dt);
  post(u1, false);

  DgState u2p = fe(u1, t0 + dt, dt);
  DgState u2 = linear_combination({{3.0 / 4.0, &u}, {1.0 / 4.0, &u2p}});
  u2.time = t0 + 0.5 * dt;
  post(u2, false);

  DgState u3p = fe(u2, t0 + 0.5 * dt, dt);
  DgState out = linear_combination({{1.0 / 3.0, &u}, {2.0 / 3.0, &u3p}});
  out.time = t0 + dt;
  post(out, true);
  return out;
}

DgState ssp_ms3_step(const MultistepHistory& hist, double dt,
                     const EulerStepFn& fe, const PostProcessFn& post) {
  if (!hist.warm())
    throw ColdHistory("multistep called with " + std::to_string(hist.size()) +
                      " of 4 history states");
  const DgState& un = hist.newest();
  const DgState& un3 = hist.oldest();
  DgState a = fe(un, un.time, 3.0 * dt);
  DgState b = fe(un3, un3.time, (12.0 / 11.0) * dt);
  DgState out = linear_combination({{16.0 / 27.0, &a}, {11.0 / 27.0, &b}});
  out.time = un.time + dt;
  post(out, true);
  return out;
}

namespace {

void record_step(const SemiDiscreteOperator& op, const MacroOps& ops,
                 const StagePostProcess& post, const DgState& s, double dt,
                 const ScalarBounds* bounds, const AdmissibleSetParams* adm,
                 const std::vector<double>& mass0, Diagnostics& d) {
  const MeshComplex& mesh = op.mesh();
  d.t.push_back(s.time);
  d.dt.push_back(dt);
  const std::vector<double> mass = op.total_mass(s);
  d.mass.push_back(mass);
  const double drift =
      std::abs(mass[0] - s.boundary_influx[0] - mass0[0]);
  d.max_mass_audit_drift = std::max(d.max_mass_audit_drift, drift);

  if (bounds) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < mesh.n_subdomains(); ++i) {
      const ActiveMesh& am = mesh.active[i];
      for (int c = 0; c < am.size(); ++c) {
        const CutCell& cc = am.cells[c];
        const double el = mesh.bg.element_left(cc.element);
        const auto [mn, mx] =
            exact_extrema(ops.basis(), s.cell_var(i, c, 0),
                          (cc.a - el) / mesh.bg.h, (cc.b - el) / mesh.bg.h);
        lo = std::min(lo, mn);
        hi = std::max(hi, mx);
      }
    }
    d.smin.push_back(lo);
    d.smax.push_back(hi);
    d.overshoot = std::max({d.overshoot, bounds->m - lo, hi - bounds->M});
  }
  if (adm) {
    double mr = 1e300, mp = 1e300;
    for (int i = 0; i < mesh.n_subdomains(); ++i) {
      const ActiveMesh& am = mesh.active[i];
      const int nmac = static_cast<int>(mesh.partition[i].macros.size());
      for (int m = 0; m < nmac; ++m) {
        double means[kMaxVars];
        ops.state_macro_means(s, i, m, means);
        const double p_bar = pressure(means, adm->gamma);
        const double floor = std::min({adm->eps, means[0], p_bar});
        const MacroElement& me = mesh.partition[i].macros[m];
        double u[kMaxVars];
        for (double xi : post.check_points().points(i, m)) {
          const double x =
              mesh.bg.element_left(am.cells[me.owner].element) +
              xi * mesh.bg.h;
          int c = me.first;
          while (c < me.last && x > am.cells[c].b) ++c;
          const double el = mesh.bg.element_left(am.cells[c].element);
          eval_cell(s, ops.basis(), i, c, (x - el) / mesh.bg.h, u);
          const double pv = pressure(u, adm->gamma);
          mr = std::min(mr, u[0]);
          mp = std::min(mp, pv);
          if (floor > 0.0) {
            d.worst_rho_floor_ratio =
                std::min(d.worst_rho_floor_ratio, u[0] / floor);
            d.worst_p_floor_ratio =
                std::min(d.worst_p_floor_ratio, pv / floor);
          }
        }
      }
    }
    d.min_rho.push_back(mr);
    d.min_p.push_back(mp);
  }
}

void monitor_means(const SemiDiscreteOperator& op, const MacroOps& ops,
                   const DgState& s, const ScalarBounds* bounds,
                   const AdmissibleSetParams* adm, int step) {
  const MeshComplex& mesh = op.mesh();
  for (int i = 0; i < mesh.n_subdomains(); ++i) {
    const int nmac = static_cast<int>(mesh.partition[i].macros.size());
    for (int m = 0; m < nmac; ++m) {
      double means[kMaxVars];
      ops.state_macro_means(s, i, m, means);
      for (int v = 0; v < (adm ? 3 : 1); ++v)
        if (!std::isfinite(means[v]))
          throw InvariantViolation("step " + std::to_string(step) +
                                   ": non-finite macro mean");
      if (bounds) {
        if (means[0] < bounds->m - 1e-11 || means[0] > bounds->M + 1e-11)
          throw MeanOutOfBounds("step " + std::to_string(step) +
                                ": macro mean " + std::to_string(means[0]) +
                                " left the invariant range");
      } else if (adm) {
        const double p_bar = pressure(means, adm->gamma);
        if (!(means[0] > -1e-11) || !(p_bar > -1e-11))
          throw MeanNotAdmissible(
              "step " + std::to_string(step) +
              ": macro mean left the admissible set, rho=" +
              std::to_string(means[0]) + " p=" + std::to_string(p_bar));
      }
    }
  }
}

}  // namespace

IntegrateResult integrate(const SemiDiscreteOperator& op, const MacroOps& ops,
                          const StagePostProcess& post, const BoundaryPair& bc,
                          const StepperConfig& sc, double t_end,
                          const std::function<void(double, double*)>& u0,
                          const ScalarBounds* bounds,
                          const AdmissibleSetParams* admissible) {
  IntegrateResult res;
  DgState state = op.l2_project_initial(u0);
  state.time = 0.0;
  post(state, true);

  const std::vector<double> mass0 = op.total_mass(state);
  // The macro-mean guarantee holds only for the reconstructed + limited
  // scheme; without reconstruction the means may leave the range (that is
  // the point of the negative controls), so the monitor stays off there.
  const bool monitor = post.config().bound_limiter &&
                       post.config().recon != ReconstructionMode::off;
  record_step(op, ops, post, state, 0.0, bounds, admissible, mass0, res.diag);

  double lam = 0.0;
  const EulerStepFn fe = [&](const DgState& s, double t, double dt) {
    DgState tmp = s;
    tmp.time = t;
    return op.forward_euler_update(tmp, dt, bc, lam);
  };
  const PostProcessFn pp = [&](DgState& s, bool final_stage) {
    post(s, final_stage);
  };

  const int p = op.degree();
  const double h = op.mesh().bg.h;
  const double delta = op.mesh().delta;

  if (sc.integrator == StepperConfig::Integrator::ssp_rk3) {
    int step = 0;
    while (state.time < t_end - 1e-14 * std::max(1.0, t_end)) {
      lam = op.global_lambda(state);
      double dt = compute_dt(p, delta, h, lam, sc.cfl, sc.dt_exponent);
      bool last = false;
      if (state.time + dt >= t_end - 1e-14 * std::max(1.0, t_end)) {
        dt = t_end - state.time;
        last = true;
      }
      state = ssp_rk3_step(state, dt, fe, pp);
      if (last) state.time = t_end;
      ++step;
      if (monitor) monitor_means(op, ops, state, bounds, admissible, step);
      record_step(op, ops, post, state, dt, bounds, admissible, mass0,
                  res.diag);
    }
    res.steps = step;
  } else {
    if (t_end > 0.0) {
      lam = op.global_lambda(state);
      const double dt_raw =
          compute_dt(p, delta, h, lam, sc.cfl, sc.dt_exponent) / 3.0;
      const int n_steps = std::max(4, static_cast<int>(std::ceil(
                                          t_end / dt_raw)));
      const double dt = t_end / n_steps;
      MultistepHistory hist;
      hist.push(state);
      int step = 0;
      for (; step < 3; ++step) {  // warm-up at the fixed dt
        lam = op.global_lambda(state);
        state = ssp_rk3_step(state, dt, fe, pp);
        state.time = dt * (step + 1);
        hist.push(state);
        if (monitor) monitor_means(op, ops, state, bounds, admissible, step);
        record_step(op, ops, post, state, dt, bounds, admissible, mass0,
                    res.diag);
      }
      for (; step < n_steps; ++step) {
        lam = op.global_lambda(state);
        state = ssp_ms3_step(hist, dt, fe, pp);
        state.time = dt * (step + 1);
        hist.push(state);
        if (monitor) monitor_means(op, ops, state, bounds, admissible, step);
        record_step(op, ops, post, state, dt, bounds, admissible, mass0,
                    res.diag);
      }
      state.time = t_end;
      res.steps = n_steps;
    }
  }
  res.state = std::move(state);
  return res;
}

}  // namespace cutdg
