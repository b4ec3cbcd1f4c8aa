#include "cutdg/state.hpp"

#include <cassert>
#include <stdexcept>

namespace cutdg {

DgState make_state(const MeshComplex& mesh, int p, int n_vars) {
  DgState s;
  s.p = p;
  s.n_vars = n_vars;
  s.coeffs.resize(mesh.n_subdomains());
  s.macro_single.resize(mesh.n_subdomains());
  s.boundary_influx.assign(n_vars, 0.0);
  for (int i = 0; i < mesh.n_subdomains(); ++i) {
    s.coeffs[i].assign(
        static_cast<std::size_t>(mesh.active[i].size()) * n_vars * (p + 1),
        0.0);
    s.macro_single[i].assign(mesh.partition[i].macros.size(), 0);
  }
  return s;
}

void eval_cell(const DgState& s, const PolyBasis& basis, int sub, int c,
               double xi, double* out) {
  const int nm = s.modes();
  double phi[16];
  basis.eval_all(xi, phi);
  const double* cc = s.cell(sub, c);
  for (int v = 0; v < s.n_vars; ++v) {
    double acc = 0.0;
    for (int k = 0; k < nm; ++k) acc += cc[v * nm + k] * phi[k];
    out[v] = acc;
  }
}

void eval_at(const DgState& s, const MeshComplex& mesh, const PolyBasis& basis,
             double x, double* out) {
  const int sub = mesh.subdomain_of(x);
  const ActiveMesh& am = mesh.active[sub];
  // cells are contiguous background elements; locate by coordinate
  int lo = 0, hi = am.size() - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (x > am.cells[mid].b)
      lo = mid + 1;
    else
      hi = mid;
  }
  const int elem = am.cells[lo].element;
  const double xi = (x - mesh.bg.element_left(elem)) / mesh.bg.h;
  eval_cell(s, basis, sub, lo, xi, out);
}

DgState linear_combination(
    const std::vector<std::pair<double, const DgState*>>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty linear combination");
  DgState out = *terms[0].second;
  for (auto& block : out.coeffs)
    for (double& c : block) c *= terms[0].first;
  for (double& b : out.boundary_influx) b *= terms[0].first;
  for (std::size_t t = 1; t < terms.size(); ++t) {
    const double w = terms[t].first;
    const DgState& s = *terms[t].second;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
      assert(out.coeffs[i].size() == s.coeffs[i].size());
      for (std::size_t k = 0; k < out.coeffs[i].size(); ++k)
        out.coeffs[i][k] += w * s.coeffs[i][k];
      for (std::size_t m = 0; m < out.macro_single[i].size(); ++m)
        out.macro_single[i][m] &= s.macro_single[i][m];
    }
    for (int v = 0; v < out.n_vars; ++v)
      out.boundary_influx[v] += w * s.boundary_influx[v];
  }
  return out;
}

}  // namespace cutdg
