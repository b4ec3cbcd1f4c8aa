#include "cutdg/driver.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cutdg/exceptions.hpp"
#include "cutdg/rng.hpp"

namespace cutdg {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string resolved_output_dir(const RunConfig& cfg) {
  const char* env = std::getenv("CUTDG_OUTPUT_DIR");
  return env && *env ? std::string(env) : cfg.output_dir;
}

}  // namespace

BuiltRun build_run(const RunConfig& cfg) {
  validate_config(cfg);
  BuiltRun br;
  br.problem =
      make_problem(cfg.problem, cfg.riemann_left, cfg.riemann_right, cfg.n);
  const ProblemSpec& ps = br.problem;
  const double alpha = cfg.alpha >= 0.0 ? cfg.alpha : ps.default_alpha;

  if (ps.unfitted_boundaries) {
    const UnfittedBoundaryMesh um = build_unfitted_boundary_mesh(
        ps.x_left, ps.x_right, cfg.n,
        cfg.alpha >= 0.0 ? cfg.alpha : ps.unfitted_alpha);
    br.mesh = build_mesh_complex(um, cfg.delta);
  } else {
    const BackgroundMesh bg =
        build_background_mesh(ps.x_left, ps.x_right, cfg.n);
    InterfaceSet ifaces;
    if (ps.fixed_interface_x) {
      const double x = *ps.fixed_interface_x;
      const int elem = std::min(
          bg.n_elements - 1,
          static_cast<int>((x - bg.x_left) / bg.h));
      ifaces.interfaces.push_back(
          {elem, (x - bg.element_left(elem)) / bg.h});
      ifaces.seed = cfg.seed;
    } else {
      const double lo = cfg.cut_lo > -1e299 ? cfg.cut_lo : ps.cut_lo;
      const double hi = cfg.cut_hi > -1e299 ? cfg.cut_hi : ps.cut_hi;
      ifaces = generate_interfaces(bg, lo, hi, alpha, cfg.seed);
    }
    br.mesh = build_mesh_complex(bg, ifaces, cfg.delta);
  }

  br.op = std::make_unique<SemiDiscreteOperator>(
      br.mesh, ps.flux, cfg.p, cfg.gamma0, cfg.gamma1,
      cfg.penalty_weights == "factorial" ? PenaltyWeights::factorial
                                         : PenaltyWeights::scaled,
      ps.interface_flux);
  br.ops = std::make_unique<MacroOps>(br.mesh, cfg.p, ps.flux.n_vars);

  PipelineConfig pc;
  pc.recon = cfg.reconstruction == "all" ? ReconstructionMode::all
             : cfg.reconstruction == "on_violation"
                 ? ReconstructionMode::on_violation
                 : ReconstructionMode::off;
  pc.bound_limiter = cfg.bound_limiter;
  pc.tvb = cfg.tvb;
  pc.tvb_m = cfg.tvb_m;
  pc.tvb_every_stage = cfg.tvb_every_stage;
  br.post = std::make_unique<StagePostProcess>(*br.ops, br.mesh, pc,
                                               ps.bounds, ps.admissible,
                                               ps.bc);

  br.stepper.integrator = cfg.integrator == "ssp_ms3"
                              ? StepperConfig::Integrator::ssp_ms3
                              : StepperConfig::Integrator::ssp_rk3;
  br.stepper.cfl = cfg.cfl;
  br.stepper.dt_exponent = cfg.dt_exponent;
  br.t_end = cfg.t_end >= 0.0 ? cfg.t_end : ps.t_end_default;
  return br;
}

void csv_values(const ProblemSpec& problem, const double* cons, double* out) {
  if (problem.flux.n_vars == 1) {
    out[0] = cons[0];
    return;
  }
  out[0] = cons[0];
  out[1] = cons[1] / cons[0];
  out[2] = pressure(cons, problem.flux.gamma);
}

RunArtifacts run(const RunConfig& cfg) {
  BuiltRun br = build_run(cfg);
  const ProblemSpec& ps = br.problem;

  IntegrateResult ir = integrate(
      *br.op, *br.ops, *br.post, ps.bc, br.stepper, br.t_end, ps.initial,
      ps.bounds ? &*ps.bounds : nullptr,
      ps.admissible ? &*ps.admissible : nullptr);

  RunArtifacts art;
  art.steps = ir.steps;
  art.t_end = br.t_end;
  art.diag = std::move(ir.diag);

  const std::string dir = resolved_output_dir(cfg);
  const std::string label = cfg.label.empty() ? ps.name : cfg.label;
  std::filesystem::create_directories(dir);

  if (cfg.write_solution) {
    art.solution_path = dir + "/" + label + "_solution.csv";
    std::ofstream f(art.solution_path);
    f << (ps.flux.n_vars == 1 ? "x,u" : "x,rho,velocity,pressure") << "\n";
    const BackgroundMesh& bg = br.mesh.bg;
    double cons[kMaxVars], vals[kMaxVars];
    for (int j = 0; j < bg.n_elements; ++j) {
      for (int k = 0; k < 8; ++k) {
        const double x = bg.element_left(j) + (k + 0.5) * bg.h / 8.0;
        if (x < br.mesh.phys_left || x > br.mesh.phys_right) continue;
        eval_at(ir.state, br.mesh, br.op->basis(), x, cons);
        csv_values(ps, cons, vals);
        f << fmt(x);
        for (int v = 0; v < ps.flux.n_vars; ++v) f << "," << fmt(vals[v]);
        f << "\n";
      }
    }
  }

  if (cfg.write_diagnostics) {
    art.diagnostics_path = dir + "/" + label + "_diagnostics.csv";
    std::ofstream f(art.diagnostics_path);
    const Diagnostics& d = art.diag;
    if (ps.flux.n_vars == 1) {
      f << "t,dt,mass,min,max\n";
      for (std::size_t k = 0; k < d.t.size(); ++k)
        f << fmt(d.t[k]) << "," << fmt(d.dt[k]) << "," << fmt(d.mass[k][0])
          << "," << fmt(d.smin[k]) << "," << fmt(d.smax[k]) << "\n";
    } else {
      f << "t,dt,mass,min_rho,min_p\n";
      for (std::size_t k = 0; k < d.t.size(); ++k)
        f << fmt(d.t[k]) << "," << fmt(d.dt[k]) << "," << fmt(d.mass[k][0])
          << "," << fmt(d.min_rho[k]) << "," << fmt(d.min_p[k]) << "\n";
    }
  }

  if (ps.reference) {
    try {
      const double t = br.t_end;
      art.errors = compute_errors(
          *br.op, ir.state,
          [&](double x, double* out) { ps.reference(x, t, out); });
      art.has_errors = true;
    } catch (const NoReference&) {
      art.has_errors = false;
    }
  }
  return art;
}

std::vector<ConvergenceRow> convergence_sweep(const RunConfig& cfg,
                                              const std::vector<int>& levels) {
  if (levels.size() < 3)
    throw ConfigError("convergence sweep needs at least 3 mesh levels");
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    RunConfig c = cfg;
    c.n = levels[i];
    c.seed = derive_seed(cfg.seed, i);
    c.label = (cfg.label.empty() ? cfg.problem : cfg.label) + "_n" +
              std::to_string(levels[i]);
    const RunArtifacts art = run(c);
    if (!art.has_errors)
      throw NoReference("convergence sweep requires a reference solution");
    ConvergenceRow row;
    row.n = levels[i];
    row.err = art.errors;
    if (!rows.empty()) {
      row.eoc_l2 = eoc(rows.back().err.l2_0(), row.err.l2_0());
      row.eoc_linf = eoc(rows.back().err.linf_0(), row.err.linf_0());
    }
    rows.push_back(row);
  }
  // table
  RunConfig c0 = cfg;
  const std::string dir = resolved_output_dir(c0);
  std::filesystem::create_directories(dir);
  const std::string label = cfg.label.empty() ? cfg.problem : cfg.label;
  std::ofstream f(dir + "/" + label + "_convergence.csv");
  f << "n,l1,l2,linf,eoc_l2,eoc_linf\n";
  for (const ConvergenceRow& r : rows)
    f << r.n << "," << fmt(r.err.l1_0()) << "," << fmt(r.err.l2_0()) << ","
      << fmt(r.err.linf_0()) << "," << fmt(r.eoc_l2) << "," << fmt(r.eoc_linf)
      << "\n";
  return rows;
}

}  // namespace cutdg
