#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "cutdg/driver.hpp"
#include "cutdg/exceptions.hpp"
#include "cutdg/rng.hpp"

namespace cutdg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

MeshComplex random_mesh(int n, double x_l, double x_r, double alpha,
                        std::uint64_t seed, double delta = 0.2) {
  const BackgroundMesh bg = build_background_mesh(x_l, x_r, n);
  const double len = x_r - x_l;
  const InterfaceSet ifaces = generate_interfaces(
      bg, x_l + 0.375 * len, x_l + 0.625 * len, alpha, seed);
  return build_mesh_complex(bg, ifaces, delta);
}

void fill_random(DgState& s, SplitMix64& rng, double lo, double hi) {
  for (auto& block : s.coeffs)
    for (double& c : block) c = rng.uniform(lo, hi);
}

CheckResult check_quadrature() {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule r = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int q = 0; q < r.size(); ++q)
        acc += r.weights[q] * std::pow(r.nodes[q], k);
      worst = std::max(worst, std::abs(acc - 1.0 / (k + 1)));
    }
  }
  for (int q = 2; q <= 6; ++q) {
    const QuadratureRule r = gauss_lobatto(q);
    for (int k = 0; k <= 2 * q - 3; ++k) {
      double acc = 0.0;
      for (int i = 0; i < r.size(); ++i)
        acc += r.weights[i] * std::pow(r.nodes[i], k);
      worst = std::max(worst, std::abs(acc - 1.0 / (k + 1)));
    }
  }
  return {"quadrature_exactness", worst < 1e-12,
          "max monomial defect " + fmt(worst)};
}

CheckResult check_mesh() {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const MeshComplex mc = random_mesh(20, 0.0, 2.0, 0.1, seed);
    double total = 0.0;
    for (const ActiveMesh& am : mc.active)
      for (const CutCell& c : am.cells) total += c.length();
    if (std::abs(total - 2.0) > 1e-13 * 2.0)
      return {"mesh_invariants", false,
              "tiling defect " + fmt(total - 2.0) + " at seed " +
                  std::to_string(seed)};
    for (int i = 0; i < mc.n_subdomains(); ++i) {
      const MacroElementPartition& part = mc.partition[i];
      std::vector<int> count(mc.active[i].size(), 0);
      for (std::size_t m = 0; m < part.macros.size(); ++m) {
        const MacroElement& me = part.macros[m];
        if (me.members() > 3)
          return {"mesh_invariants", false, "macro with > 3 members"};
        if (me.length() < mc.delta * mc.bg.h * (1.0 - 1e-12))
          return {"mesh_invariants", false, "macro shorter than delta*h"};
        double wsum = 0.0;
        for (double w : me.weights) wsum += w;
        if (std::abs(wsum - 1.0) > 1e-14)
          return {"mesh_invariants", false, "weights do not sum to 1"};
        for (int c = me.first; c <= me.last; ++c) ++count[c];
      }
      for (int c : count)
        if (c != 1)
          return {"mesh_invariants", false,
                  "cell not in exactly one macro-element"};
    }
    // determinism
    const MeshComplex mc2 = random_mesh(20, 0.0, 2.0, 0.1, seed);
    for (int k = 0; k < mc.interfaces.size(); ++k)
      if (mc.interfaces.interfaces[k].alpha !=
          mc2.interfaces.interfaces[k].alpha)
        return {"mesh_invariants", false, "interface set not deterministic"};
  }
  return {"mesh_invariants", true, "1000 random geometries"};
}

CheckResult check_conservation() {
  double worst = 0.0;
  SplitMix64 rng(7);
  for (int iter = 0; iter < 10000; ++iter) {
    const MeshComplex mc = random_mesh(8, 0.0, 1.0, 0.2, 1000 + iter);
    const int p = iter % 4;
    MacroOps ops(mc, p, 1);
    DgState s = make_state(mc, p, 1);
    fill_random(s, rng, -1.0, 1.0);
    std::vector<double> before;
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (std::size_t m = 0; m < mc.partition[i].macros.size(); ++m) {
        double mean;
        ops.state_macro_means(s, i, static_cast<int>(m), &mean);
        before.push_back(mean);
      }
    apply_reconstruction(ops, s, ReconstructionMode::all);
    std::size_t k = 0;
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (std::size_t m = 0; m < mc.partition[i].macros.size(); ++m) {
        double mean;
        ops.state_macro_means(s, i, static_cast<int>(m), &mean);
        worst = std::max(worst, std::abs(mean - before[k]) /
                                    std::max(1.0, std::abs(before[k])));
        ++k;
      }
  }
  if (worst > 1e-13)
    return {"reconstruction_conservation", false,
            "relative mean drift " + fmt(worst)};

  // periodic forward Euler keeps total mass
  double drift = 0.0;
  for (int iter = 0; iter < 20; ++iter) {
    const MeshComplex mc = random_mesh(20, 0.0, 2.0, 0.1, 77 + iter);
    const int p = iter % 4;
    SemiDiscreteOperator op(mc, burgers_flux(), p, 0.25, 0.75);
    DgState s = op.make_state();
    fill_random(s, rng, 0.0, 1.0);
    const double m0 = op.total_mass(s)[0];
    const double lam = op.global_lambda(s);
    const double dt = compute_dt(p, 0.2, mc.bg.h, lam, 0.9);
    const DgState s2 =
        op.forward_euler_update(s, dt, periodic_pair(), lam);
    drift = std::max(
        drift, std::abs(op.total_mass(s2)[0] - m0) / std::max(1.0, m0));
  }
  if (drift > 1e-12)
    return {"reconstruction_conservation", false,
            "periodic mass drift " + fmt(drift)};
  return {"reconstruction_conservation", true,
          "10^4 fuzz cases, drift " + fmt(worst) + ", step drift " +
              fmt(drift)};
}

CheckResult check_p0_oracle() {
  double worst = 0.0;
  SplitMix64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    const MeshComplex mc = random_mesh(20, 0.0, 2.0, 0.1, 300 + iter);
    SemiDiscreteOperator op(mc, burgers_flux(), 0, 0.25, 0.75);
    MacroOps ops(mc, 0, 1);
    PolyBasis basis(0);
    DgState s = op.make_state();
    fill_random(s, rng, 0.0, 1.0);
    apply_reconstruction(ops, s, ReconstructionMode::all);
    const double lam = std::max(op.global_lambda(s), 1e-12);
    const double dt = compute_dt(0, mc.delta, mc.bg.h, lam, 0.95);
    DgState next = op.forward_euler_update(s, dt, periodic_pair(), lam);
    apply_reconstruction(ops, next, ReconstructionMode::all);

    auto value_at = [&](const DgState& st, double x) {
      double u;
      // wrap periodically
      double y = x;
      if (y < mc.phys_left) y += mc.phys_right - mc.phys_left;
      if (y > mc.phys_right) y -= mc.phys_right - mc.phys_left;
      eval_at(st, mc, basis, y, &u);
      return u;
    };
    auto f = [](double u) { return 0.5 * u * u; };
    for (int i = 0; i < mc.n_subdomains(); ++i) {
      for (std::size_t m = 0; m < mc.partition[i].macros.size(); ++m) {
        const MacroElement& me = mc.partition[i].macros[m];
        const double im = me.length();
        const double tiny = 1e-8 * mc.bg.h;
        const double b = value_at(s, 0.5 * (me.im_a + me.im_b));
        const double a = value_at(s, me.im_a - tiny);
        const double c = value_at(s, me.im_b + tiny);
        const double expect = (1.0 - lam * dt / im) * b +
                              dt / (2.0 * im) * (lam * c - f(c)) +
                              dt / (2.0 * im) * (lam * a + f(a));
        const double got = value_at(next, 0.5 * (me.im_a + me.im_b));
        worst = std::max(worst, std::abs(got - expect));
        const double lo = std::min({a, b, c}), hi = std::max({a, b, c});
        if (got < lo - 1e-13 || got > hi + 1e-13)
          return {"p0_oracle", false, "update left the stencil hull"};
      }
    }
  }
  return {"p0_oracle", worst < 1e-13,
          "max |update - three-point formula| = " + fmt(worst)};
}

CheckResult check_free_stream() {
  double worst = 0.0;
  for (int kind = 0; kind < 3; ++kind) {
    const MeshComplex mc = random_mesh(20, 0.0, 2.0, 0.01, 42 + kind);
    const FluxModel fm = kind == 0   ? advection_flux()
                         : kind == 1 ? burgers_flux()
                                     : euler_flux(1.4);
    const int p = 2;
    SemiDiscreteOperator op(mc, fm, p, 0.25, 0.75);
    DgState s = op.make_state();
    double cons[3] = {1.0, 0.3, 2.0};
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (int c = 0; c < mc.active[i].size(); ++c)
        for (int v = 0; v < fm.n_vars; ++v)
          s.cell_var(i, c, v)[0] = cons[v];
    const DgState s0 = s;
    const double lam = op.global_lambda(s);
    const double dt = compute_dt(p, mc.delta, mc.bg.h, lam, 1.0);
    for (int step = 0; step < 100; ++step)
      s = op.forward_euler_update(s, dt, periodic_pair(), lam);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
      for (std::size_t k = 0; k < s.coeffs[i].size(); ++k)
        worst = std::max(worst,
                         std::abs(s.coeffs[i][k] - s0.coeffs[i][k]) / 100.0);
  }
  return {"free_stream", worst < 1e-13,
          "max per-step coefficient drift " + fmt(worst)};
}

CheckResult check_spd() {
  for (double alpha : {1e-2, 1e-4, 1e-6}) {
    const BackgroundMesh bg = build_background_mesh(0.0, 2.0, 20);
    InterfaceSet ifaces;
    for (int j = 8; j <= 12; ++j) ifaces.interfaces.push_back({j, alpha});
    const MeshComplex mc = build_mesh_complex(bg, ifaces, 0.2);
    for (int p = 0; p <= 3; ++p) {
      try {
        SemiDiscreteOperator op(mc, advection_flux(), p, 0.25, 0.75);
      } catch (const InvariantViolation& e) {
        return {"stabilized_mass_spd", false,
                "factorization failed at alpha=" + fmt(alpha) +
                    " p=" + std::to_string(p)};
      }
    }
  }
  return {"stabilized_mass_spd", true,
          "Cholesky succeeded for alpha down to 1e-6, p = 0..3"};
}

CheckResult check_reconstruction() {
  SplitMix64 rng(11);
  double worst_rep = 0.0, worst_idem = 0.0, worst_jump = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const MeshComplex mc = random_mesh(12, -1.0, 1.0, 0.05, 900 + iter);
    const int p = iter % 4;
    MacroOps ops(mc, p, 1);
    SemiDiscreteOperator op(mc, advection_flux(), p, 0.25, 0.75);
    // global polynomial of degree <= p reproduces exactly
    std::vector<double> poly(p + 1);
    for (double& c : poly) c = rng.uniform(-1.0, 1.0);
    auto eval_poly = [&](double x) {
      double acc = 0.0;
      for (int k = p; k >= 0; --k) acc = acc * x + poly[k];
      return acc;
    };
    DgState s = op.l2_project_initial(
        [&](double x, double* u) { u[0] = eval_poly(x); });
    DgState r = s;
    apply_reconstruction(ops, r, ReconstructionMode::all);
    PolyBasis basis(p);
    for (int pt = 0; pt < 50; ++pt) {
      const double x = rng.uniform(-1.0, 1.0);
      double a, b;
      eval_at(s, mc, basis, x, &a);
      eval_at(r, mc, basis, x, &b);
      worst_rep = std::max(worst_rep, std::abs(a - b));
      worst_rep = std::max(worst_rep, std::abs(b - eval_poly(x)));
    }
    // idempotence and continuity on random data
    fill_random(s, rng, -2.0, 2.0);
    apply_reconstruction(ops, s, ReconstructionMode::all);
    DgState twice = s;
    apply_reconstruction(ops, twice, ReconstructionMode::all);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
      for (std::size_t k = 0; k < s.coeffs[i].size(); ++k)
        worst_idem = std::max(
            worst_idem, std::abs(s.coeffs[i][k] - twice.coeffs[i][k]));
    for (int i = 0; i < mc.n_subdomains(); ++i) {
      const MacroElementPartition& part = mc.partition[i];
      for (const MacroElement& me : part.macros)
        for (int c = me.first; c < me.last; ++c) {
          double ul, ur;
          eval_cell(s, basis, i, c, 1.0, &ul);
          eval_cell(s, basis, i, c + 1, 0.0, &ur);
          worst_jump = std::max(worst_jump, std::abs(ur - ul));
        }
    }
  }
  const bool pass = worst_rep < 1e-12 && worst_idem < 1e-12 &&
                    worst_jump < 1e-12;
  return {"reconstruction_properties", pass,
          "reproduction " + fmt(worst_rep) + ", idempotence " +
              fmt(worst_idem) + ", edge jump " + fmt(worst_jump)};
}

CheckResult check_limiters() {
  SplitMix64 rng(13);
  double worst_mean = 0.0, worst_bound = 0.0, worst_pos = 0.0;
  for (int iter = 0; iter < 2000; ++iter) {
    const MeshComplex mc = random_mesh(8, 0.0, 1.0, 0.1, 500 + iter);
    const int p = 1 + iter % 3;
    MacroOps ops(mc, p, 1);
    DgState s = make_state(mc, p, 1);
    fill_random(s, rng, -1.0, 1.0);
    apply_reconstruction(ops, s, ReconstructionMode::all);
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (std::size_t m = 0; m < mc.partition[i].macros.size(); ++m) {
        MacroPolynomial poly = ops.extract(s, i, static_cast<int>(m));
        const double mean = ops.poly_mean(poly, 0);
        const ScalarBounds bounds{mean - rng.uniform(0.01, 0.5),
                                  mean + rng.uniform(0.01, 0.5)};
        scalar_bound_limiter(ops, poly, mean, bounds);
        worst_mean = std::max(worst_mean,
                              std::abs(ops.poly_mean(poly, 0) - mean));
        const auto [lo, hi] = exact_extrema(ops, poly, 0);
        worst_bound = std::max(
            {worst_bound, bounds.m - lo, hi - bounds.M});
      }
  }
  // Euler positivity
  for (int iter = 0; iter < 500; ++iter) {
    const MeshComplex mc = random_mesh(8, 0.0, 1.0, 0.1, 800 + iter);
    const int p = 1 + iter % 3;
    MacroOps ops(mc, p, 3);
    CheckPointSet pts(mc, p);
    DgState s = make_state(mc, p, 3);
    const double rho0 = rng.uniform(0.2, 2.0);
    const double m0 = rng.uniform(-1.0, 1.0);
    const double p0 = rng.uniform(0.2, 2.0);
    const double e0 = p0 / 0.4 + 0.5 * m0 * m0 / rho0;
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (int c = 0; c < mc.active[i].size(); ++c) {
        const double base[3] = {rho0, m0, e0};
        for (int v = 0; v < 3; ++v) {
          s.cell_var(i, c, v)[0] = base[v];
          for (int k = 1; k <= p; ++k)
            s.cell_var(i, c, v)[k] = rng.uniform(-1.5, 1.5) * base[0];
        }
      }
    apply_reconstruction(ops, s, ReconstructionMode::all);
    const AdmissibleSetParams prm{1.4, 1e-8};
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (std::size_t m = 0; m < mc.partition[i].macros.size(); ++m) {
        MacroPolynomial poly = ops.extract(s, i, static_cast<int>(m));
        double means[3];
        ops.state_macro_means(s, i, static_cast<int>(m), means);
        if (!(means[0] > 0.0) || !(pressure(means, 1.4) > 0.0))
          continue;  // fuzz produced an inadmissible mean; skip
        double before[3] = {means[0], means[1], means[2]};
        const double floor = euler_positivity_limiter(
            ops, poly, means, prm, pts.points(i, static_cast<int>(m)));
        double q[3];
        for (double xi : pts.points(i, static_cast<int>(m))) {
          for (int v = 0; v < 3; ++v) q[v] = ops.poly_eval(poly, v, xi);
          worst_pos = std::max({worst_pos, (floor - q[0]) / floor,
                                (floor - pressure(q, 1.4)) / floor});
        }
        ops.write_back(s, poly);
        double after[3];
        ops.state_macro_means(s, i, static_cast<int>(m), after);
        for (int v = 0; v < 3; ++v)
          worst_mean = std::max(worst_mean, std::abs(after[v] - before[v]) /
                                                std::max(1.0, std::abs(
                                                                  before[v])));
      }
  }
  const bool pass =
      worst_mean < 1e-13 && worst_bound < 1e-12 && worst_pos < 1e-9;
  return {"limiter_properties", pass,
          "mean drift " + fmt(worst_mean) + ", bound defect " +
              fmt(worst_bound) + ", positivity defect " + fmt(worst_pos)};
}

CheckResult check_cfl_monitor() {
  RunConfig cfg;
  cfg.problem = "advection_nonsmooth";
  cfg.n = 50;
  cfg.p = 1;
  cfg.cfl = 5.0;
  cfg.t_end = 1.0;
  cfg.write_solution = false;
  cfg.write_diagnostics = false;
  cfg.output_dir = "out/verify";
  try {
    run(cfg);
  } catch (const InvariantViolation&) {
    return {"cfl_monitor_trips", true,
            "mean-bound monitor tripped at CFL factor 5"};
  }
  return {"cfl_monitor_trips", false,
          "deliberate CFL violation was not detected"};
}

CheckResult check_determinism() {
  namespace fs = std::filesystem;
  RunConfig cfg;
  cfg.problem = "burgers_smooth";
  cfg.n = 40;
  cfg.p = 2;
  cfg.t_end = 0.05;
  cfg.seed = 99;
  auto read = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  cfg.output_dir = "out/verify_det_a";
  const RunArtifacts a = run(cfg);
  cfg.output_dir = "out/verify_det_b";
  const RunArtifacts b = run(cfg);
  const bool same = read(a.solution_path) == read(b.solution_path) &&
                    read(a.diagnostics_path) == read(b.diagnostics_path);
  fs::remove_all("out/verify_det_a");
  fs::remove_all("out/verify_det_b");
  return {"determinism", same,
          same ? "identical CSV bytes for identical seed"
               : "outputs differ between identical runs"};
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite) {
  using Fn = std::function<CheckResult()>;
  const std::vector<std::pair<std::string, Fn>> table = {
      {"quadrature", check_quadrature},
      {"mesh", check_mesh},
      {"conservation", check_conservation},
      {"p0_oracle", check_p0_oracle},
      {"free_stream", check_free_stream},
      {"spd", check_spd},
      {"reconstruction", check_reconstruction},
      {"limiters", check_limiters},
      {"cfl_monitor", check_cfl_monitor},
      {"determinism", check_determinism},
  };
  std::vector<CheckResult> out;
  bool matched = false;
  for (const auto& [name, fn] : table) {
    if (suite == "all" || suite == name) {
      matched = true;
      out.push_back(fn());
    }
  }
  if (!matched) throw ConfigError("unknown verify suite: " + suite);
  return out;
}

}  // namespace cutdg
