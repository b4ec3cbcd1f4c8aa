#include <cstdio>
#include <iostream>

#include "cutdg/driver.hpp"
#include "cutdg/exceptions.hpp"

namespace cutdg {

namespace {

RunConfig base(const std::string& problem, int n, int p,
               const std::string& outdir, const std::string& label) {
  RunConfig c;
  c.problem = problem;
  c.n = n;
  c.p = p;
  c.output_dir = outdir;
  c.label = label;
  return c;
}

void sweep(RunConfig c, const std::vector<int>& levels) {
  std::cout << "sweep " << c.label << " (p=" << c.p << ", " << c.integrator
            << ")\n";
  const auto rows = convergence_sweep(c, levels);
  std::printf("  %6s  %12s  %12s  %7s  %7s\n", "n", "L2", "Linf", "eocL2",
              "eocLi");
  for (const auto& r : rows)
    std::printf("  %6d  %12.4e  %12.4e  %7.3f  %7.3f\n", r.n, r.err.l2_0(),
                r.err.linf_0(), r.eoc_l2, r.eoc_linf);
}

void single(const RunConfig& c) {
  std::cout << "run " << c.label << "\n";
  const RunArtifacts art = run(c);
  std::cout << "  steps=" << art.steps << " -> " << art.solution_path << "\n";
  if (art.has_errors)
    std::printf("  L1=%.4e L2=%.4e Linf=%.4e\n", art.errors.l1_0(),
                art.errors.l2_0(), art.errors.linf_0());
}

}  // namespace

std::vector<std::string> reproduce_ids() {
  return {"fig4",  "fig5",  "fig6",  "fig7",      "fig8",
          "fig9",  "fig11", "fig12", "fig13",     "twoblast",
          "appendix-inflow"};
}

void reproduce(const std::string& id, const std::string& outdir) {
  const std::vector<int> levels = {20, 40, 80, 160, 320, 640};
  if (id == "fig4") {
    // smooth advection accuracy: RK3 (with its degeneracy) and MS3
    for (int p : {2, 3}) {
      RunConfig c = base("advection_smooth", 20, p, outdir,
                         "adv_rk3_p" + std::to_string(p));
      c.alpha = 0.1;
      c.integrator = "ssp_rk3";
      c.dt_exponent = p == 3 ? 4.0 / 3.0 : 1.0;
      sweep(c, levels);
    }
    for (int p : {2, 3}) {
      RunConfig c = base("advection_smooth", 20, p, outdir,
                         "adv_ms3_p" + std::to_string(p));
      c.alpha = 0.1;
      c.integrator = "ssp_ms3";
      c.dt_exponent = p == 3 ? 4.0 / 3.0 : 1.0;
      sweep(c, levels);
    }
  } else if (id == "fig5") {
    for (int p : {1, 2}) {
      RunConfig raw = base("advection_nonsmooth", 100, p, outdir,
                           "nonsmooth_raw_p" + std::to_string(p));
      raw.reconstruction = "off";
      raw.bound_limiter = false;
      single(raw);
      RunConfig lim = base("advection_nonsmooth", 100, p, outdir,
                           "nonsmooth_elementwise_p" + std::to_string(p));
      lim.reconstruction = "off";
      lim.bound_limiter = true;
      single(lim);
      RunConfig full = base("advection_nonsmooth", 100, p, outdir,
                            "nonsmooth_macro_p" + std::to_string(p));
      single(full);
    }
  } else if (id == "fig6") {
    for (int p : {2, 3}) {
      RunConfig c = base("burgers_smooth", 20, p, outdir,
                         "burgers_ms3_p" + std::to_string(p));
      c.integrator = "ssp_ms3";
      c.dt_exponent = p == 3 ? 4.0 / 3.0 : 1.0;
      sweep(c, levels);
    }
    for (int n : {20, 320}) {
      RunConfig norec = base("burgers_smooth", n, 3, outdir,
                             "burgers_shock_norecon_n" + std::to_string(n));
      norec.t_end = 0.5;
      norec.reconstruction = "off";
      single(norec);
      RunConfig all = base("burgers_smooth", n, 3, outdir,
                           "burgers_shock_macro_n" + std::to_string(n));
      all.t_end = 0.5;
      single(all);
      RunConfig ov = base("burgers_smooth", n, 3, outdir,
                          "burgers_shock_onviolation_n" + std::to_string(n));
      ov.t_end = 0.5;
      ov.reconstruction = "on_violation";
      single(ov);
    }
  } else if (id == "fig7") {
    for (int p : {1, 2, 3}) {
      RunConfig rare = base("burgers_riemann", 40, p, outdir,
                            "burgers_rarefaction_p" + std::to_string(p));
      rare.riemann_left = -1.0;
      rare.riemann_right = 1.0;
      single(rare);
      RunConfig shock = base("burgers_riemann", 40, p, outdir,
                             "burgers_shock_p" + std::to_string(p));
      shock.riemann_left = 1.0;
      shock.riemann_right = -0.5;
      single(shock);
    }
  } else if (id == "fig8") {
    for (double t : {0.3, 0.6, 0.9}) {
      RunConfig c = base("discontinuous_flux", 40, 2, outdir,
                         "interface_t" + std::to_string(t).substr(0, 3));
      c.t_end = t;
      single(c);
    }
  } else if (id == "fig9") {
    for (int p : {1, 2, 3}) {
      RunConfig c = base("euler_low_density", 20, p, outdir,
                         "euler_accuracy_p" + std::to_string(p));
      c.dt_exponent = p == 3 ? 4.0 / 3.0 : 1.0;
      sweep(c, {20, 40, 80, 160});
    }
  } else if (id == "fig11") {
    for (int p : {2, 3}) {
      RunConfig c =
          base("euler_sod", 200, p, outdir, "sod_p" + std::to_string(p));
      c.tvb = true;
      single(c);
    }
  } else if (id == "fig12") {
    for (int p : {2, 3}) {
      RunConfig c = base("euler_double_rarefaction", 200, p, outdir,
                         "double_rarefaction_p" + std::to_string(p));
      single(c);
    }
  } else if (id == "fig13") {
    RunConfig all = base("euler_sedov", 200, 2, outdir, "sedov_macro");
    all.tvb = true;
    single(all);
    RunConfig ov = base("euler_sedov", 200, 2, outdir, "sedov_onviolation");
    ov.tvb = true;
    ov.reconstruction = "on_violation";
    single(ov);
  } else if (id == "twoblast") {
    for (int p : {1, 2, 3}) {
      RunConfig c = base("euler_two_blast", 400, p, outdir,
                         "twoblast_p" + std::to_string(p));
      c.tvb = true;
      single(c);
    }
    // uncut reference: alpha = 1 collapses the boundary extension
    RunConfig ref = base("euler_two_blast", 3200, 2, outdir, "twoblast_ref");
    ref.alpha = 1.0;
    ref.tvb = true;
    std::cout << "reference run (n=3200, fitted); this takes a while\n";
    single(ref);
  } else if (id == "appendix-inflow") {
    for (int p : {1, 2, 3}) {
      RunConfig c = base("advection_inflow", 100, p, outdir,
                         "inflow_p" + std::to_string(p));
      single(c);
    }
  } else {
    std::string known;
    for (const std::string& s : reproduce_ids()) known += " " + s;
    throw ConfigError("unknown reproduce id '" + id + "'; available:" +
                      known);
  }
}

}  // namespace cutdg
