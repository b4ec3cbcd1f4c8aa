#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cutdg/driver.hpp"
#include "cutdg/exceptions.hpp"

using namespace cutdg;

TEST_CASE("config round-trip and strictness") {
  RunConfig cfg;
  cfg.problem = "burgers_riemann";
  cfg.riemann_left = 1.0;
  cfg.riemann_right = -0.5;
  cfg.n = 160;
  cfg.alpha = 0.05;
  cfg.seed = 987654321;
  cfg.p = 3;
  cfg.gamma1 = 0.6;
  cfg.integrator = "ssp_ms3";
  cfg.cfl = 0.8;
  cfg.dt_exponent = 4.0 / 3.0;
  cfg.reconstruction = "on_violation";
  cfg.tvb = true;
  cfg.tvb_m = 2.5;
  cfg.label = "roundtrip";
  const RunConfig back = parse_config(serialize_config(cfg));
  CHECK(serialize_config(back) == serialize_config(cfg));

  CHECK_THROWS_AS(parse_config("[mesh]\nbogus_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[nonsense]\nn = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[mesh]\nn := 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[discretization]\np = 9\n"), ConfigError);
}

TEST_CASE("compute_errors examples") {
  RunConfig cfg;
  cfg.problem = "advection_smooth";
  cfg.n = 20;
  cfg.p = 2;
  const BuiltRun br = build_run(cfg);

  // state identical to the reference: errors at round-off
  const DgState s = br.op->l2_project_initial(
      [](double x, double* u) { u[0] = 0.25 * x - 0.125; });
  const ErrorReport same = compute_errors(
      *br.op, s, [](double x, double* u) { u[0] = 0.25 * x - 0.125; });
  CHECK(same.l2_0() < 1e-13);
  CHECK(same.linf_0() < 1e-13);

  // zero state against u = 1 on [0,2]: L2 = sqrt(2), Linf = 1
  DgState zero = br.op->make_state();
  const ErrorReport full = compute_errors(
      *br.op, zero, [](double, double* u) { u[0] = 1.0; });
  CHECK(full.l2_0() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(full.linf_0() == doctest::Approx(1.0));
  CHECK(full.l1_0() == doctest::Approx(2.0).epsilon(1e-13));

  // projection error decays at order p+1 = 3
  double prev = 0.0;
  for (int level = 0; level < 3; ++level) {
    RunConfig c = cfg;
    c.n = 20 << level;
    const BuiltRun brl = build_run(c);
    const DgState sl = brl.op->l2_project_initial(
        [](double x, double* u) { u[0] = std::sin(M_PI * x); });
    const ErrorReport e = compute_errors(
        *brl.op, sl, [](double x, double* u) { u[0] = std::sin(M_PI * x); });
    if (level > 0) CHECK(prev / e.l2_0() > 6.0);
    prev = e.l2_0();
  }
}

TEST_CASE("run writes the documented CSV schemas") {
  RunConfig cfg;
  cfg.problem = "advection_smooth";
  cfg.n = 20;
  cfg.p = 1;
  cfg.t_end = 0.05;
  cfg.output_dir = "out/test_csv";
  const RunArtifacts art = run(cfg);

  std::ifstream sol(art.solution_path);
  REQUIRE(sol.good());
  std::string header;
  std::getline(sol, header);
  CHECK(header == "x,u");
  int rows = 0;
  for (std::string line; std::getline(sol, line);) ++rows;
  CHECK(rows == 20 * 8);

  std::ifstream diag(art.diagnostics_path);
  REQUIRE(diag.good());
  std::getline(diag, header);
  CHECK(header == "t,dt,mass,min,max");

  CHECK(art.has_errors);
  CHECK(art.errors.l2_0() < 0.05);
  std::filesystem::remove_all("out/test_csv");
}

TEST_CASE("euler run writes primitive-variable columns") {
  RunConfig cfg;
  cfg.problem = "euler_sod";
  cfg.n = 24;
  cfg.p = 1;
  cfg.t_end = 0.01;
  cfg.tvb = true;
  cfg.output_dir = "out/test_csv_euler";
  const RunArtifacts art = run(cfg);
  std::ifstream sol(art.solution_path);
  std::string header;
  std::getline(sol, header);
  CHECK(header == "x,rho,velocity,pressure");
  std::ifstream diag(art.diagnostics_path);
  std::getline(diag, header);
  CHECK(header == "t,dt,mass,min_rho,min_p");
  std::filesystem::remove_all("out/test_csv_euler");
}

TEST_CASE("unfitted padding does not change reported norms") {
  // errors are integrated over the physical domain only
  RunConfig cfg;
  cfg.problem = "advection_inflow";
  cfg.n = 50;
  cfg.p = 1;
  cfg.t_end = 0.1;
  cfg.write_solution = false;
  cfg.write_diagnostics = false;
  const BuiltRun br = build_run(cfg);
  double width = 0.0;
  for (const ActiveMesh& am : br.mesh.active)
    for (const CutCell& c : am.cells) width += c.length();
  CHECK(width == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convergence sweep needs three levels") {
  RunConfig cfg;
  cfg.problem = "advection_smooth";
  CHECK_THROWS_AS(convergence_sweep(cfg, {20, 40}), ConfigError);
}

TEST_CASE("inflow through an unfitted boundary preserves the bounds") {
  // square wave fed through the left wall of an immersed domain; two
  // discontinuities at x = 0.25 and x = 0.75 by t = 0.75
  RunConfig cfg;
  cfg.problem = "advection_inflow";
  cfg.n = 100;
  cfg.p = 2;
  cfg.write_solution = false;
  cfg.write_diagnostics = false;
  const BuiltRun br = build_run(cfg);
  const IntegrateResult ir = integrate(
      *br.op, *br.ops, *br.post, br.problem.bc, br.stepper, 0.75,
      br.problem.initial, &*br.problem.bounds, nullptr);
  CHECK(ir.diag.overshoot <= 1e-12);
  const PolyBasis basis(2);
  double u;
  eval_at(ir.state, br.mesh, basis, 0.5, &u);
  CHECK(u == doctest::Approx(1.0).epsilon(1e-3));
  eval_at(ir.state, br.mesh, basis, 0.9, &u);
  CHECK(u == doctest::Approx(0.0).epsilon(1e-3));
  eval_at(ir.state, br.mesh, basis, 0.1, &u);
  CHECK(u == doctest::Approx(0.0).epsilon(1e-3));
}
