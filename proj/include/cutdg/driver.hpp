#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cutdg/config.hpp"
#include "cutdg/norms.hpp"
#include "cutdg/pipeline.hpp"
#include "cutdg/problems.hpp"
#include "cutdg/time_integration.hpp"

namespace cutdg {

/// Everything assembled from one RunConfig, ready to integrate.
struct BuiltRun {
  ProblemSpec problem;
  MeshComplex mesh;
  std::unique_ptr<SemiDiscreteOperator> op;
  std::unique_ptr<MacroOps> ops;
  std::unique_ptr<StagePostProcess> post;
  StepperConfig stepper;
  double t_end = 0.0;
};

BuiltRun build_run(const RunConfig& cfg);

struct RunArtifacts {
  bool has_errors = false;
  ErrorReport errors;
  Diagnostics diag;
  int steps = 0;
  double t_end = 0.0;
  std::string solution_path;
  std::string diagnostics_path;
};

/// Executes one configured run and writes the solution and diagnostics CSV
/// files (8 uniform samples per background element inside the physical
/// domain, 17 significant digits). CUTDG_OUTPUT_DIR overrides cfg.output_dir.
RunArtifacts run(const RunConfig& cfg);

struct ConvergenceRow {
  int n = 0;
  ErrorReport err;
  double eoc_l2 = 0.0;  // vs previous row
  double eoc_linf = 0.0;
};

/// Refinement sweep with per-level seeds derived from the master seed.
/// Writes one convergence table CSV next to the per-level outputs.
std::vector<ConvergenceRow> convergence_sweep(const RunConfig& cfg,
                                              const std::vector<int>& levels);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Property suites: quadrature, mesh, conservation, p0_oracle, free_stream,
/// spd, reconstruction, limiters, cfl_monitor, determinism, or all.
std::vector<CheckResult> verify_suite(const std::string& suite);

std::vector<std::string> reproduce_ids();

/// Canned figure-level experiment configurations.
void reproduce(const std::string& id, const std::string& outdir);

/// Conserved state -> CSV row values (scalar passthrough; Euler converts to
/// density, velocity, pressure).
void csv_values(const ProblemSpec& problem, const double* cons, double* out);

}  // namespace cutdg
