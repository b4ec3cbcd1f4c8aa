#pragma once

#include <optional>

#include "cutdg/limiters.hpp"
#include "cutdg/reconstruction.hpp"

namespace cutdg {

/// Switches for the per-stage post-process applied after every forward Euler
/// stage (and to the projected initial data).
struct PipelineConfig {
  ReconstructionMode recon = ReconstructionMode::all;
  bool bound_limiter = true;
  bool tvb = false;
  double tvb_m = 0.0;
  bool tvb_every_stage = true;
};

/// Reconstruction followed by limiting, in the order reconstruction -> TVB ->
/// bound/positivity limiter, so the bound guarantee is final. With
/// reconstruction off but limiting on, each member is limited over its own
/// intersection instead (the per-element variant used as a negative control).
class StagePostProcess {
 public:
  StagePostProcess(const MacroOps& ops, const MeshComplex& mesh,
                   PipelineConfig cfg, std::optional<ScalarBounds> bounds,
                   std::optional<AdmissibleSetParams> admissible,
                   BoundaryPair bc);

  /// Applies the pipeline in place. final_stage selects whether TVB runs when
  /// tvb_every_stage is off.
  void operator()(DgState& s, bool final_stage = true) const;

  const PipelineConfig& config() const { return cfg_; }
  const CheckPointSet& check_points() const { return pts_; }

  /// True if the state on macro (sub, m) violates its bounds / leaves the
  /// eps-interior of the admissible set at a check point.
  bool violates(const DgState& s, int sub, int m) const;

 private:
  void limit_macro(DgState& s, int sub, int m) const;
  void limit_members(DgState& s) const;  // reconstruction-off fallback

  const MacroOps* ops_;
  const MeshComplex* mesh_;
  PipelineConfig cfg_;
  std::optional<ScalarBounds> bounds_;
  std::optional<AdmissibleSetParams> adm_;
  BoundaryPair bc_;
  CheckPointSet pts_;
};

}  // namespace cutdg
