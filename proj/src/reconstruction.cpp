#include "cutdg/reconstruction.hpp"

#include <stdexcept>

#include "cutdg/quadrature.hpp"

namespace cutdg {

MacroOps::MacroOps(const MeshComplex& mesh, int p, int n_vars)
    : mesh_(&mesh), basis_(p), p_(p), nv_(n_vars) {
  const int nm = p + 1;
  const QuadratureRule rule = gauss_legendre(nm);
  const double h = mesh.bg.h;
  const int ns = mesh.n_subdomains();
  int_k_.resize(ns);
  int_im_.resize(ns);
  std::vector<double> phi(nm);
  for (int i = 0; i < ns; ++i) {
    const ActiveMesh& am = mesh.active[i];
    int_k_[i].resize(am.size());
    for (int c = 0; c < am.size(); ++c) {
      const CutCell& cc = am.cells[c];
      const double el = mesh.bg.element_left(cc.element);
      int_k_[i][c].assign(nm, 0.0);
      for (int k = 0; k < rule.size(); ++k) {
        const double x = cc.a + (cc.b - cc.a) * rule.nodes[k];
        const double w = rule.weights[k] * cc.length();
        basis_.eval_all((x - el) / h, phi.data());
        for (int m = 0; m < nm; ++m) int_k_[i][c][m] += w * phi[m];
      }
    }
    const MacroElementPartition& part = mesh.partition[i];
    int_im_[i].resize(part.macros.size());
    for (std::size_t m = 0; m < part.macros.size(); ++m) {
      const MacroElement& me = part.macros[m];
      const double ol =
          mesh.bg.element_left(am.cells[me.owner].element);
      int_im_[i][m].assign(nm, 0.0);
      for (int k = 0; k < rule.size(); ++k) {
        const double x = me.im_a + (me.im_b - me.im_a) * rule.nodes[k];
        const double w = rule.weights[k] * me.length();
        basis_.eval_all((x - ol) / h, phi.data());
        for (int mm = 0; mm < nm; ++mm) int_im_[i][m][mm] += w * phi[mm];
      }
    }
  }
}

int MacroOps::member_offset(int sub, int m, int j) const {
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const ActiveMesh& am = mesh_->active[sub];
  return am.cells[me.first + j].element - am.cells[me.owner].element;
}

double MacroOps::to_owner_xi(int sub, int m, double x) const {
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const ActiveMesh& am = mesh_->active[sub];
  const double ol = mesh_->bg.element_left(am.cells[me.owner].element);
  return (x - ol) / mesh_->bg.h;
}

MacroPolynomial MacroOps::reconstruct(const DgState& s, int sub,
                                      int m) const {
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const int nm = p_ + 1;
  MacroPolynomial poly;
  poly.sub = sub;
  poly.macro = m;
  poly.xi_a = to_owner_xi(sub, m, me.im_a);
  poly.xi_b = to_owner_xi(sub, m, me.im_b);
  poly.coef.assign(static_cast<std::size_t>(nv_) * nm, 0.0);

  std::vector<double> ext(nm);
  for (int v = 0; v < nv_; ++v) {
    double mass_k = 0.0;   // sum_j int_{K_j} w_j
    double mass_ext = 0.0; // sum_j omega_j int_{I_M} w_j^e
    for (int j = 0; j < me.members(); ++j) {
      const double* cj = s.cell_var(sub, me.first + j, v);
      const int d = member_offset(sub, m, j);
      basis_.translate(cj, d, ext.data());
      const double wj = me.weights[j];
      for (int k = 0; k < nm; ++k) {
        poly.coef[v * nm + k] += wj * ext[k];
        mass_ext += wj * ext[k] * int_im_[sub][m][k];
        mass_k += cj[k] * int_k_[sub][me.first + j][k];
      }
    }
    poly.coef[v * nm] += (mass_k - mass_ext) / me.length();
  }
  return poly;
}

MacroPolynomial MacroOps::extract(const DgState& s, int sub, int m) const {
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const int nm = p_ + 1;
  MacroPolynomial poly;
  poly.sub = sub;
  poly.macro = m;
  poly.xi_a = to_owner_xi(sub, m, me.im_a);
  poly.xi_b = to_owner_xi(sub, m, me.im_b);
  poly.coef.resize(static_cast<std::size_t>(nv_) * nm);
  const double* oc = s.cell(sub, me.owner);
  for (int k = 0; k < nv_ * nm; ++k) poly.coef[k] = oc[k];
  return poly;
}

void MacroOps::write_back(DgState& s, const MacroPolynomial& poly) const {
  const MacroElement& me = mesh_->partition[poly.sub].macros[poly.macro];
  const int nm = p_ + 1;
  std::vector<double> restr(nm);
  for (int j = 0; j < me.members(); ++j) {
    const int d = member_offset(poly.sub, poly.macro, j);
    for (int v = 0; v < nv_; ++v) {
      basis_.translate(&poly.coef[v * nm], -d, restr.data());
      double* cj = s.cell_var(poly.sub, me.first + j, v);
      for (int k = 0; k < nm; ++k) cj[k] = restr[k];
    }
  }
  s.macro_single[poly.sub][poly.macro] = 1;
}

double MacroOps::poly_mean(const MacroPolynomial& poly, int var) const {
  const MacroElement& me = mesh_->partition[poly.sub].macros[poly.macro];
  const int nm = p_ + 1;
  double acc = 0.0;
  for (int k = 0; k < nm; ++k)
    acc += poly.coef[var * nm + k] * int_im_[poly.sub][poly.macro][k];
  return acc / me.length();
}

double MacroOps::poly_eval(const MacroPolynomial& poly, int var,
                           double xi) const {
  const int nm = p_ + 1;
  double acc = 0.0;
  for (int k = 0; k < nm; ++k)
    acc += poly.coef[var * nm + k] * basis_.value(k, xi);
  return acc;
}

void MacroOps::state_macro_means(const DgState& s, int sub, int m,
                                 double* out) const {
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const int nm = p_ + 1;
  for (int v = 0; v < nv_; ++v) {
    double acc = 0.0;
    for (int j = 0; j < me.members(); ++j) {
      const double* cj = s.cell_var(sub, me.first + j, v);
      for (int k = 0; k < nm; ++k)
        acc += cj[k] * int_k_[sub][me.first + j][k];
    }
    out[v] = acc / me.length();
  }
}

std::vector<double> extend(const PolyBasis& basis,
                           const std::vector<double>& member_coef,
                           int offset) {
  std::vector<double> out(member_coef.size());
  basis.translate(member_coef.data(), offset, out.data());
  return out;
}

void apply_reconstruction(const MacroOps& ops, DgState& s,
                          ReconstructionMode mode,
                          const std::function<bool(int, int)>& detector) {
  if (mode == ReconstructionMode::off) return;
  if (mode == ReconstructionMode::on_violation && !detector)
    throw std::invalid_argument(
        "apply_reconstruction: on_violation mode needs a detector");
  const MeshComplex& mesh = ops.mesh();
  for (int i = 0; i < mesh.n_subdomains(); ++i) {
    const int nmac = static_cast<int>(mesh.partition[i].macros.size());
    for (int m = 0; m < nmac; ++m) {
      if (mode == ReconstructionMode::on_violation) {
        if (s.macro_single[i][m]) continue;  // already one polynomial
        if (!detector(i, m)) continue;
      }
      const MacroPolynomial poly = ops.reconstruct(s, i, m);
      ops.write_back(s, poly);
    }
  }
}

}  // namespace cutdg
