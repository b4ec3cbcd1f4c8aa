#include "cutdg/norms.hpp"

#include <algorithm>
#include <cmath>

namespace cutdg {

ErrorReport compute_errors(
    const SemiDiscreteOperator& op, const DgState& s,
    const std::function<void(double, double*)>& reference) {
  const MeshComplex& mesh = op.mesh();
  const int nv = s.n_vars;
  ErrorReport rep;
  rep.l1.assign(nv, 0.0);
  rep.l2.assign(nv, 0.0);
  rep.linf.assign(nv, 0.0);
  const QuadratureRule& rule = op.volume_rule();
  std::vector<double> uh(nv), ur(nv);
  auto accumulate_point = [&](int i, int c, double x, double w) {
    const CutCell& cc = mesh.active[i].cells[c];
    const double xi = (x - mesh.bg.element_left(cc.element)) / mesh.bg.h;
    eval_cell(s, op.basis(), i, c, xi, uh.data());
    reference(x, ur.data());
    for (int v = 0; v < nv; ++v) {
      const double e = std::abs(uh[v] - ur[v]);
      rep.linf[v] = std::max(rep.linf[v], e);
      if (w > 0.0) {
        rep.l1[v] += w * e;
        rep.l2[v] += w * e * e;
      }
    }
  };
  for (int i = 0; i < mesh.n_subdomains(); ++i) {
    const ActiveMesh& am = mesh.active[i];
    for (int c = 0; c < am.size(); ++c) {
      const CutCell& cc = am.cells[c];
      for (int k = 0; k < rule.size(); ++k)
        accumulate_point(i, c, cc.a + (cc.b - cc.a) * rule.nodes[k],
                         rule.weights[k] * cc.length());
      accumulate_point(i, c, cc.a, 0.0);
      accumulate_point(i, c, cc.b, 0.0);
    }
  }
  for (int v = 0; v < nv; ++v) rep.l2[v] = std::sqrt(rep.l2[v]);
  return rep;
}

}  // namespace cutdg
