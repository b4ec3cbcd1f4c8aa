#pragma once

#include <cstdint>
#include <string>

namespace cutdg {

/// Every experiment knob. Values below are the defaults; negative sentinels
/// mean "use the problem's default".
struct RunConfig {
  // [problem]
  std::string problem = "advection_smooth";
  double riemann_left = -1.0;   // burgers_riemann data
  double riemann_right = 1.0;
  double t_end = -1.0;          // < 0: problem default

  // [mesh]
  int n = 100;
  double alpha = -1.0;          // cut-fraction cap; < 0: problem default
  double cut_lo = -1e300;       // cut region; unset: middle quarter
  double cut_hi = -1e300;
  std::uint64_t seed = 2024;

  // [discretization]
  int p = 2;
  double delta = 0.2;
  double gamma0 = 0.25;
  double gamma1 = 0.75;
  std::string penalty_weights = "scaled";  // scaled | factorial

  // [time]
  std::string integrator = "ssp_rk3";  // ssp_rk3 | ssp_ms3
  double cfl = 1.0;
  double dt_exponent = 1.0;

  // [limiting]
  std::string reconstruction = "all";  // all | on_violation | off
  bool bound_limiter = true;
  bool tvb = false;
  double tvb_m = 0.0;
  bool tvb_every_stage = true;

  // [output]
  std::string output_dir = "out";
  std::string label;
  bool write_solution = true;
  bool write_diagnostics = true;
};

/// Parses the sectioned key=value format; unknown sections or keys are hard
/// errors with line context. '#' starts a comment.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Lossless round-trip serialization of every knob.
std::string serialize_config(const RunConfig& cfg);

void validate_config(const RunConfig& cfg);

}  // namespace cutdg
