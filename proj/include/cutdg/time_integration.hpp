#pragma once

#include <deque>
#include <functional>
#include <vector>

#include "cutdg/operator.hpp"
#include "cutdg/pipeline.hpp"
#include "cutdg/state.hpp"

namespace cutdg {

struct StepperConfig {
  enum class Integrator { ssp_rk3, ssp_ms3 };
  Integrator integrator = Integrator::ssp_rk3;
  double cfl = 1.0;          // safety factor C in (0, 1]
  double dt_exponent = 1.0;  // dt proportional to h^e (4/3 for p=3 accuracy)
};

/// CFL step: dt = C * delta * h^e * w / lambda with w = 1 for p = 0 and the
/// first normalized Gauss-Lobatto weight for p >= 1.
double compute_dt(int p, double delta, double h, double lambda, double cfl,
                  double dt_exponent = 1.0);

/// One forward Euler stage: (state, stage time, dt) -> updated state.
using EulerStepFn =
    std::function<DgState(const DgState&, double, double)>;
/// Reconstruction-and-limiting post-process, applied in place.
using PostProcessFn = std::function<void(DgState&, bool)>;

/// Shu-Osher SSP-RK3 with the post-process after every stage.
DgState ssp_rk3_step(const DgState& u, double dt, const EulerStepFn& fe,
                     const PostProcessFn& post);

/// Ring buffer of the last 4 accepted states for the 3rd-order multistep.
class MultistepHistory {
 public:
  void push(const DgState& s) {
    buf_.push_back(s);
    if (buf_.size() > 4) buf_.pop_front();
  }
  bool warm() const { return buf_.size() == 4; }
  const DgState& newest() const { return buf_.back(); }
  const DgState& oldest() const { return buf_.front(); }
  int size() const { return static_cast<int>(buf_.size()); }

 private:
  std::deque<DgState> buf_;
};

/// u^{n+1} = 16/27 (u^n + 3 dt L(u^n)) + 11/27 (u^{n-3} + 12/11 dt L(u^{n-3}))
/// followed by the post-process. Throws ColdHistory before warm-up.
DgState ssp_ms3_step(const MultistepHistory& hist, double dt,
                     const EulerStepFn& fe, const PostProcessFn& post);

/// Per-step diagnostics time series.
struct Diagnostics {
  std::vector<double> t, dt;
  std::vector<std::vector<double>> mass;  // per variable
  std::vector<double> smin, smax;         // scalar runs
  std::vector<double> min_rho, min_p;     // euler runs
  double worst_rho_floor_ratio = 1e300;   // min over run of rho / floor
  double worst_p_floor_ratio = 1e300;
  double max_mass_audit_drift = 0.0;  // |mass - influx - mass0| (var 0)
  double overshoot = 0.0;             // max over run of bound violation
};

struct IntegrateResult {
  DgState state;
  Diagnostics diag;
  int steps = 0;
};

/// Full run: stabilized projection of the initial data, post-process, then
/// CFL-driven stepping to t_end with final-step clipping (or a fixed uniform
/// step for the multistep integrator, warmed up by 3 RK3 steps). Wave speed
/// is refreshed once per accepted step. Macro means are monitored at every
/// accepted step when the bound limiter is active.
IntegrateResult integrate(const SemiDiscreteOperator& op, const MacroOps& ops,
                          const StagePostProcess& post, const BoundaryPair& bc,
                          const StepperConfig& sc, double t_end,
                          const std::function<void(double, double*)>& u0,
                          const ScalarBounds* bounds,
                          const AdmissibleSetParams* admissible);

}  // namespace cutdg
