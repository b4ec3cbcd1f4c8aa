// Command-line driver: run single experiments, refinement sweeps, the
// property-check suites, and the canned figure-level configurations.
//
// Exit codes: 0 ok, 2 config error, 3 invariant violation, 4 solver abort.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cutdg/driver.hpp"
#include "cutdg/exceptions.hpp"

namespace {

std::vector<int> parse_levels(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Bound-preserving cut-DG solver for 1D conservation laws"};
  app.require_subcommand(1);

  std::string config_path, levels = "20,40,80,160", suite = "all";
  std::string figure_id, outdir = "out";

  CLI::App* cmd_run = app.add_subcommand("run", "execute one configured run");
  cmd_run->add_option("config", config_path, "config file")->required();

  CLI::App* cmd_conv =
      app.add_subcommand("converge", "refinement sweep with EOC table");
  cmd_conv->add_option("config", config_path, "config file")->required();
  cmd_conv->add_option("--levels", levels, "comma-separated mesh sizes");

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run a property-check suite");
  cmd_verify->add_option("suite", suite, "suite name or 'all'");

  CLI::App* cmd_rep =
      app.add_subcommand("reproduce", "canned figure-level experiments");
  cmd_rep->add_option("figure", figure_id, "figure id, e.g. fig5")
      ->required();
  cmd_rep->add_option("--outdir", outdir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (cmd_run->parsed()) {
    const cutdg::RunConfig cfg = cutdg::load_config(config_path);
    const cutdg::RunArtifacts art = cutdg::run(cfg);
    std::cout << "steps: " << art.steps << "\n";
    std::cout << "solution: " << art.solution_path << "\n";
    std::cout << "diagnostics: " << art.diagnostics_path << "\n";
    if (art.has_errors)
      std::printf("errors: L1=%.6e L2=%.6e Linf=%.6e\n", art.errors.l1_0(),
                  art.errors.l2_0(), art.errors.linf_0());
    std::printf("mass audit drift: %.3e\n", art.diag.max_mass_audit_drift);
    return 0;
  }
  if (cmd_conv->parsed()) {
    const cutdg::RunConfig cfg = cutdg::load_config(config_path);
    const auto rows = cutdg::convergence_sweep(cfg, parse_levels(levels));
    std::printf("%6s  %12s  %12s  %12s  %7s  %7s\n", "n", "L1", "L2", "Linf",
                "eocL2", "eocLi");
    for (const auto& r : rows)
      std::printf("%6d  %12.4e  %12.4e  %12.4e  %7.3f  %7.3f\n", r.n,
                  r.err.l1_0(), r.err.l2_0(), r.err.linf_0(), r.eoc_l2,
                  r.eoc_linf);
    return 0;
  }
  if (cmd_verify->parsed()) {
    const auto results = cutdg::verify_suite(suite);
    bool all_pass = true;
    for (const auto& r : results) {
      std::printf("[%s] %-30s %s\n", r.pass ? "PASS" : "FAIL",
                  r.name.c_str(), r.detail.c_str());
      all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 3;
  }
  if (cmd_rep->parsed()) {
    cutdg::reproduce(figure_id, outdir);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const cutdg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cutdg::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return 4;
  }
}
