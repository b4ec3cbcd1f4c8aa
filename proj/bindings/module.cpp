#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cutdg/driver.hpp"
#include "cutdg/exceptions.hpp"
#include "cutdg/quadrature.hpp"
#include "cutdg/riemann.hpp"

namespace py = pybind11;
using namespace cutdg;

namespace {

py::dict run_config_dict(const RunConfig& cfg, const RunArtifacts& art) {
  py::dict d;
  d["problem"] = cfg.problem;
  d["n"] = cfg.n;
  d["p"] = cfg.p;
  d["steps"] = art.steps;
  d["t_end"] = art.t_end;
  d["solution_csv"] = art.solution_path;
  d["diagnostics_csv"] = art.diagnostics_path;
  d["mass_audit_drift"] = art.diag.max_mass_audit_drift;
  d["overshoot"] = art.diag.overshoot;
  if (!art.diag.min_rho.empty()) {
    double mr = 1e300, mp = 1e300;
    for (double v : art.diag.min_rho) mr = std::min(mr, v);
    for (double v : art.diag.min_p) mp = std::min(mp, v);
    d["min_rho"] = mr;
    d["min_p"] = mp;
  }
  if (art.has_errors) {
    d["l1"] = art.errors.l1_0();
    d["l2"] = art.errors.l2_0();
    d["linf"] = art.errors.linf_0();
  }
  return d;
}

RunConfig config_from_kwargs(const py::dict& kw) {
  RunConfig cfg;
  for (auto item : kw) {
    const std::string key = py::cast<std::string>(item.first);
    if (key == "problem")
      cfg.problem = py::cast<std::string>(item.second);
    else if (key == "n")
      cfg.n = py::cast<int>(item.second);
    else if (key == "p")
      cfg.p = py::cast<int>(item.second);
    else if (key == "alpha")
      cfg.alpha = py::cast<double>(item.second);
    else if (key == "t_end")
      cfg.t_end = py::cast<double>(item.second);
    else if (key == "seed")
      cfg.seed = py::cast<std::uint64_t>(item.second);
    else if (key == "integrator")
      cfg.integrator = py::cast<std::string>(item.second);
    else if (key == "cfl")
      cfg.cfl = py::cast<double>(item.second);
    else if (key == "dt_exponent")
      cfg.dt_exponent = py::cast<double>(item.second);
    else if (key == "reconstruction")
      cfg.reconstruction = py::cast<std::string>(item.second);
    else if (key == "bound_limiter")
      cfg.bound_limiter = py::cast<bool>(item.second);
    else if (key == "tvb")
      cfg.tvb = py::cast<bool>(item.second);
    else if (key == "tvb_m")
      cfg.tvb_m = py::cast<double>(item.second);
    else if (key == "output_dir")
      cfg.output_dir = py::cast<std::string>(item.second);
    else if (key == "label")
      cfg.label = py::cast<std::string>(item.second);
    else if (key == "riemann_left")
      cfg.riemann_left = py::cast<double>(item.second);
    else if (key == "riemann_right")
      cfg.riemann_right = py::cast<double>(item.second);
    else
      throw ConfigError("unknown config key: " + key);
  }
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bound-preserving cut-DG solver for 1D conservation laws";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<InvariantViolation>(m, "InvariantViolation");

  m.def(
      "gauss_legendre",
      [](int n) {
        const QuadratureRule r = gauss_legendre(n);
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("n"), "Gauss-Legendre nodes and weights on [0, 1]");
  m.def(
      "gauss_lobatto",
      [](int q) {
        const QuadratureRule r = gauss_lobatto(q);
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("q"), "Gauss-Lobatto nodes and weights on [0, 1]");
  m.def("lobatto_order_for_degree", &lobatto_order_for_degree, py::arg("p"));

  m.def(
      "mesh_summary",
      [](int n, double x_left, double x_right, double cut_lo, double cut_hi,
         double alpha, std::uint64_t seed, double delta) {
        const BackgroundMesh bg = build_background_mesh(x_left, x_right, n);
        const InterfaceSet ifs =
            generate_interfaces(bg, cut_lo, cut_hi, alpha, seed);
        const MeshComplex mc = build_mesh_complex(bg, ifs, delta);
        double total = 0.0;
        int macros = 0, cells = 0;
        for (const ActiveMesh& am : mc.active)
          for (const CutCell& c : am.cells) {
            total += c.length();
            ++cells;
          }
        for (const auto& part : mc.partition)
          macros += static_cast<int>(part.macros.size());
        py::dict d;
        d["h"] = bg.h;
        d["n_interfaces"] = ifs.size();
        d["n_subdomains"] = mc.n_subdomains();
        d["n_cells"] = cells;
        d["n_macro_elements"] = macros;
        d["tiled_length"] = total;
        return d;
      },
      py::arg("n"), py::arg("x_left"), py::arg("x_right"), py::arg("cut_lo"),
      py::arg("cut_hi"), py::arg("alpha"), py::arg("seed") = 2024,
      py::arg("delta") = 0.2,
      "Build the cut geometry and report its invariant summary");

  m.def(
      "riemann_exact",
      [](py::tuple left, py::tuple right, double gamma, double x0, double x,
         double t) {
        const EulerRiemannSolver rs(
            {py::cast<double>(left[0]), py::cast<double>(left[1]),
             py::cast<double>(left[2])},
            {py::cast<double>(right[0]), py::cast<double>(right[1]),
             py::cast<double>(right[2])},
            gamma, x0);
        PrimitiveState s;
        rs.sample_primitive(x, t, s);
        return py::make_tuple(s.rho, s.u, s.p);
      },
      py::arg("left"), py::arg("right"), py::arg("gamma"), py::arg("x0"),
      py::arg("x"), py::arg("t"),
      "Exact ideal-gas Riemann solution in primitive variables");

  m.def(
      "run",
      [](const py::kwargs& kw) {
        const RunConfig cfg = config_from_kwargs(kw);
        return run_config_dict(cfg, run(cfg));
      },
      "Execute one run; keyword arguments mirror the config file keys");

  m.def(
      "run_config_file",
      [](const std::string& path) {
        const RunConfig cfg = load_config(path);
        return run_config_dict(cfg, run(cfg));
      },
      py::arg("path"));

  m.def(
      "converge",
      [](const std::vector<int>& levels, const py::kwargs& kw) {
        const RunConfig cfg = config_from_kwargs(kw);
        const auto rows = convergence_sweep(cfg, levels);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["n"] = r.n;
          d["l2"] = r.err.l2_0();
          d["linf"] = r.err.linf_0();
          d["eoc_l2"] = r.eoc_l2;
          d["eoc_linf"] = r.eoc_linf;
          out.append(d);
        }
        return out;
      },
      py::arg("levels"));

  m.def(
      "verify",
      [](const std::string& suite) {
        py::list out;
        for (const CheckResult& r : verify_suite(suite)) {
          py::dict d;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all");
}
