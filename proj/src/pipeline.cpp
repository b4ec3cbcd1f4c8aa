#include "cutdg/pipeline.hpp"

#include <cmath>

#include "cutdg/exceptions.hpp"
#include "cutdg/quadrature.hpp"

namespace cutdg {

StagePostProcess::StagePostProcess(const MacroOps& ops,
                                   const MeshComplex& mesh, PipelineConfig cfg,
                                   std::optional<ScalarBounds> bounds,
                                   std::optional<AdmissibleSetParams> adm,
                                   BoundaryPair bc)
    : ops_(&ops),
      mesh_(&mesh),
      cfg_(cfg),
      bounds_(bounds),
      adm_(adm),
      bc_(bc),
      pts_(mesh, ops.degree()) {}

bool StagePostProcess::violates(const DgState& s, int sub, int m) const {
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const ActiveMesh& am = mesh_->active[sub];
  if (bounds_) {
    // exact extrema of each member over its intersection
    for (int j = 0; j < me.members(); ++j) {
      const CutCell& cc = am.cells[me.first + j];
      const double el = mesh_->bg.element_left(cc.element);
      const double xa = (cc.a - el) / mesh_->bg.h;
      const double xb = (cc.b - el) / mesh_->bg.h;
      const auto [lo, hi] = exact_extrema(
          ops_->basis(), s.cell_var(sub, me.first + j, 0), xa, xb);
      if (lo < bounds_->m - 1e-12 || hi > bounds_->M + 1e-12) return true;
    }
    return false;
  }
  // Euler: density or pressure below the macro's floor at a check point
  double means[kMaxVars];
  ops_->state_macro_means(s, sub, m, means);
  const double p_bar = pressure(means, adm_->gamma);
  const double eps = std::min({adm_->eps, means[0], p_bar});
  double u[kMaxVars];
  for (double xi : pts_.points(sub, m)) {
    // evaluate the piecewise state: find the member containing xi
    const double x = mesh_->bg.element_left(am.cells[me.owner].element) +
                     xi * mesh_->bg.h;
    int c = me.first;
    while (c < me.last && x > am.cells[c].b) ++c;
    const double el = mesh_->bg.element_left(am.cells[c].element);
    eval_cell(s, ops_->basis(), sub, c, (x - el) / mesh_->bg.h, u);
    if (u[0] < eps || pressure(u, adm_->gamma) < eps) return true;
  }
  return false;
}

void StagePostProcess::limit_macro(DgState& s, int sub, int m) const {
  MacroPolynomial poly = ops_->extract(s, sub, m);
  if (bounds_) {
    const double mean = ops_->poly_mean(poly, 0);
    const std::vector<double> before = poly.coef;
    scalar_bound_limiter(*ops_, poly, mean, *bounds_);
    if (poly.coef != before) ops_->write_back(s, poly);
    return;
  }
  double means[kMaxVars];
  ops_->state_macro_means(s, sub, m, means);
  const std::vector<double> before = poly.coef;
  const double floor =
      euler_positivity_limiter(*ops_, poly, means, *adm_, pts_.points(sub, m));
  if (poly.coef != before) ops_->write_back(s, poly);

  // The limiter certifies the floor on the owner-frame polynomial; the
  // solver evaluates the written-back member restrictions, whose translation
  // round-off can exceed the floor when the coefficients are many orders
  // larger than eps (blast fronts). Verify in the member frame and keep
  // contracting toward the mean until the values the rest of the system
  // sees clear the floor.
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const ActiveMesh& am = mesh_->active[sub];
  const int nm = ops_->degree() + 1;
  auto member_frame_ok = [&]() {
    double u[kMaxVars];
    for (double xi : pts_.points(sub, m)) {
      const double x =
          mesh_->bg.element_left(am.cells[me.owner].element) +
          xi * mesh_->bg.h;
      int c = me.first;
      while (c < me.last && x > am.cells[c].b) ++c;
      const double el = mesh_->bg.element_left(am.cells[c].element);
      eval_cell(s, ops_->basis(), sub, c, (x - el) / mesh_->bg.h, u);
      if (u[0] < floor * (1.0 - 1e-10) ||
          pressure(u, adm_->gamma) < floor * (1.0 - 1e-10))
        return false;
    }
    return true;
  };
  for (int retry = 0; retry < 300 && !member_frame_ok(); ++retry) {
    for (int v = 0; v < 3; ++v) {
      poly.coef[v * nm] = 0.98 * poly.coef[v * nm] + 0.02 * means[v];
      for (int k = 1; k < nm; ++k) poly.coef[v * nm + k] *= 0.98;
    }
    ops_->write_back(s, poly);
  }
}

void StagePostProcess::limit_members(DgState& s) const {
  // Per-element limiting over each intersection; the negative-control
  // configuration without macro reconstruction.
  const int nm = ops_->degree() + 1;
  const int nv = ops_->n_vars();
  const QuadratureRule rule = gauss_legendre(nm);
  const QuadratureRule gl = gauss_lobatto(pts_.lobatto_order());
  for (int i = 0; i < mesh_->n_subdomains(); ++i) {
    const ActiveMesh& am = mesh_->active[i];
    for (int c = 0; c < am.size(); ++c) {
      const CutCell& cc = am.cells[c];
      const double el = mesh_->bg.element_left(cc.element);
      const double xa = (cc.a - el) / mesh_->bg.h;
      const double xb = (cc.b - el) / mesh_->bg.h;
      double means[kMaxVars];
      for (int v = 0; v < nv; ++v) {
        double acc = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          const double xi = xa + (xb - xa) * rule.nodes[q];
          double phi[16];
          ops_->basis().eval_all(xi, phi);
          double val = 0.0;
          for (int k = 0; k < nm; ++k)
            val += s.cell_var(i, c, v)[k] * phi[k];
          acc += rule.weights[q] * val;
        }
        means[v] = acc;
      }
      if (bounds_) {
        const auto [lo, hi] =
            exact_extrema(ops_->basis(), s.cell_var(i, c, 0), xa, xb);
        double theta = 1.0;
        const double mean = means[0];
        if (hi > bounds_->M && hi > mean)
          theta = std::min(theta, (bounds_->M - mean) / (hi - mean));
        if (lo < bounds_->m && lo < mean)
          theta = std::min(theta, (mean - bounds_->m) / (mean - lo));
        theta = std::clamp(theta, 0.0, 1.0);
        if (theta < 1.0) {
          double* cc0 = s.cell_var(i, c, 0);
          cc0[0] = theta * cc0[0] + (1.0 - theta) * mean;
          for (int k = 1; k < nm; ++k) cc0[k] *= theta;
        }
      } else {
        const double p_bar = pressure(means, adm_->gamma);
        if (!(means[0] > -1e-11) || !(p_bar > -1e-11))
          throw MeanNotAdmissible("element mean outside admissible set");
        const double eps = std::min({adm_->eps, means[0], p_bar});
        // density stage
        double rho_min = means[0];
        std::vector<double> xis;
        for (int q = 0; q < gl.size(); ++q)
          xis.push_back(xa + (xb - xa) * gl.nodes[q]);
        for (double xi : xis) {
          double phi[16];
          ops_->basis().eval_all(xi, phi);
          double val = 0.0;
          for (int k = 0; k < nm; ++k)
            val += s.cell_var(i, c, 0)[k] * phi[k];
          rho_min = std::min(rho_min, val);
        }
        if (rho_min < eps) {
          double th = means[0] - rho_min > 0.0
                          ? (means[0] - eps) / (means[0] - rho_min)
                          : 1.0;
          th = std::clamp(th, 0.0, 1.0);
          double* c0 = s.cell_var(i, c, 0);
          c0[0] = th * c0[0] + (1.0 - th) * means[0];
          for (int k = 1; k < nm; ++k) c0[k] *= th;
        }
        // pressure stage via the macro polynomial path on a synthetic frame
        double th2 = 1.0;
        for (double xi : xis) {
          double phi[16], u[kMaxVars];
          ops_->basis().eval_all(xi, phi);
          for (int v = 0; v < nv; ++v) {
            double val = 0.0;
            for (int k = 0; k < nm; ++k)
              val += s.cell_var(i, c, v)[k] * phi[k];
            u[v] = val;
          }
          if (pressure(u, adm_->gamma) < eps) {
            // conservative fallback: pull straight to the mean
            th2 = 0.0;
          }
        }
        if (th2 < 1.0) {
          for (int v = 0; v < nv; ++v) {
            double* cv = s.cell_var(i, c, v);
            cv[0] = th2 * cv[0] + (1.0 - th2) * means[v];
            for (int k = 1; k < nm; ++k) cv[k] *= th2;
          }
        }
      }
    }
  }
}

void StagePostProcess::operator()(DgState& s, bool final_stage) const {
  if (cfg_.recon == ReconstructionMode::off) {
    if (cfg_.bound_limiter) limit_members(s);
    return;
  }
  if (cfg_.recon == ReconstructionMode::all) {
    apply_reconstruction(*ops_, s, ReconstructionMode::all);
  } else {
    apply_reconstruction(*ops_, s, ReconstructionMode::on_violation,
                         [&](int sub, int m) { return violates(s, sub, m); });
  }
  if (cfg_.tvb && (cfg_.tvb_every_stage || final_stage))
    apply_tvb(*ops_, s, cfg_.tvb_m, bc_);
  if (cfg_.bound_limiter) {
    for (int i = 0; i < mesh_->n_subdomains(); ++i) {
      const int nmac = static_cast<int>(mesh_->partition[i].macros.size());
      for (int m = 0; m < nmac; ++m)
        if (s.macro_single[i][m]) limit_macro(s, i, m);
    }
  }
}

}  // namespace cutdg
