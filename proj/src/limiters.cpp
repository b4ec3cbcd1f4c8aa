#include "cutdg/limiters.hpp"

#include <algorithm>
#include <cmath>

#include "cutdg/exceptions.hpp"
#include "cutdg/quadrature.hpp"

namespace cutdg {

CheckPointSet::CheckPointSet(const MeshComplex& mesh, int p)
    : q_(lobatto_order_for_degree(p)) {
  const QuadratureRule gl = gauss_lobatto(q_);
  const int ns = mesh.n_subdomains();
  xi_.resize(ns);
  for (int i = 0; i < ns; ++i) {
    const ActiveMesh& am = mesh.active[i];
    const MacroElementPartition& part = mesh.partition[i];
    xi_[i].resize(part.macros.size());
    for (std::size_t m = 0; m < part.macros.size(); ++m) {
      const MacroElement& me = part.macros[m];
      const double ol = mesh.bg.element_left(am.cells[me.owner].element);
      std::vector<double>& pts = xi_[i][m];
      auto push = [&](double x) { pts.push_back((x - ol) / mesh.bg.h); };
      for (int k = 0; k < gl.size(); ++k)
        push(me.im_a + (me.im_b - me.im_a) * gl.nodes[k]);
      for (int j = 0; j < me.members(); ++j) {
        const CutCell& cc = am.cells[me.first + j];
        for (int k = 0; k < gl.size(); ++k)
          push(cc.a + (cc.b - cc.a) * gl.nodes[k]);
      }
    }
  }
}

std::pair<double, double> exact_extrema(const PolyBasis& basis,
                                        const double* coef, double xi_a,
                                        double xi_b) {
  const int p = basis.degree();
  // monomial form in s = 2 xi - 1
  double a[4] = {0, 0, 0, 0};
  for (int k = 0; k <= p; ++k) {
    // phi_k contributes its monomial expansion; recover it by evaluating the
    // basis derivative structure exactly: p <= 3 so four Taylor terms at s=0
    // (xi = 1/2) suffice.
    const double c = coef[k];
    if (c == 0.0) continue;
    a[0] += c * basis.value(k, 0.5);
    if (p >= 1) a[1] += c * basis.deriv(k, 0.5, 1) / 2.0;
    if (p >= 2) a[2] += c * basis.deriv(k, 0.5, 2) / (2.0 * 4.0);
    if (p >= 3) a[3] += c * basis.deriv(k, 0.5, 3) / (6.0 * 8.0);
  }
  const double sa = 2.0 * xi_a - 1.0, sb = 2.0 * xi_b - 1.0;
  auto val = [&](double s) { return ((a[3] * s + a[2]) * s + a[1]) * s + a[0]; };
  double lo = std::min(val(sa), val(sb));
  double hi = std::max(val(sa), val(sb));
  // critical points: 3 a3 s^2 + 2 a2 s + a1 = 0
  const double c2 = 3.0 * a[3], c1 = 2.0 * a[2], c0 = a[1];
  const double scale = std::abs(c2) + std::abs(c1) + std::abs(c0);
  auto consider = [&](double s) {
    if (s > sa && s < sb) {
      const double v = val(s);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  if (scale > 0.0) {
    if (std::abs(c2) <= 1e-14 * scale) {
      if (std::abs(c1) > 1e-14 * scale) consider(-c0 / c1);
    } else {
      const double disc = c1 * c1 - 4.0 * c2 * c0;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double r = c1 >= 0.0 ? -0.5 * (c1 + sq) : -0.5 * (c1 - sq);
        consider(r / c2);
        if (r != 0.0) consider(c0 / r);
      }
    }
  }
  return {lo, hi};
}

std::pair<double, double> exact_extrema(const MacroOps& ops,
                                        const MacroPolynomial& poly,
                                        int var) {
  const int nm = ops.degree() + 1;
  return exact_extrema(ops.basis(), poly.coef.data() + var * nm, poly.xi_a,
                       poly.xi_b);
}

void scalar_bound_limiter(const MacroOps& ops, MacroPolynomial& poly,
                          double mean, const ScalarBounds& bounds) {
  if (mean < bounds.m - 1e-11 || mean > bounds.M + 1e-11)
    throw MeanOutOfBounds("macro mean " + std::to_string(mean) +
                          " outside [" + std::to_string(bounds.m) + ", " +
                          std::to_string(bounds.M) + "]");
  const auto [lo, hi] = exact_extrema(ops, poly, 0);
  double theta = 1.0;
  if (hi > bounds.M && hi > mean)
    theta = std::min(theta, (bounds.M - mean) / (hi - mean));
  if (lo < bounds.m && lo < mean)
    theta = std::min(theta, (mean - bounds.m) / (mean - lo));
  theta = std::clamp(theta, 0.0, 1.0);
  if (theta == 1.0) return;
  const int nm = ops.degree() + 1;
  poly.coef[0] = theta * poly.coef[0] + (1.0 - theta) * mean;
  for (int k = 1; k < nm; ++k) poly.coef[k] *= theta;
}

namespace {

// Largest t in [0, 1] with p(s(t)) >= eps guaranteed in floating point, on
// the segment from the mean to the check-point state. Each component is
// affine in t so the exact condition p(s(t)) = eps is a quadratic
// rho(t) (p(t) - eps) = 0; the quadratic root is polished by bisection until
// the sign condition holds at the returned parameter.
double pressure_line_search(const double* mean, const double* q, double gamma,
                            double eps) {
  const double dr = q[0] - mean[0], dm = q[1] - mean[1], de = q[2] - mean[2];
  const double g1 = gamma - 1.0;
  const double a = g1 * (de * dr - 0.5 * dm * dm);
  const double b =
      g1 * (mean[2] * dr + de * mean[0] - mean[1] * dm) - eps * dr;
  const double c = g1 * (mean[2] * mean[0] - 0.5 * mean[1] * mean[1]) -
                   eps * mean[0];
  auto f = [&](double t) { return (a * t + b) * t + c; };
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  double hi = 1.0;  // f(hi) < 0 by the caller's check
  if (scale > 0.0 && std::abs(a) > 1e-13 * scale) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double r = b >= 0.0 ? -0.5 * (b + sq) : -0.5 * (b - sq);
      for (double t : {r / a, c / r})
        if (t >= 0.0 && t <= 1.0) {
          if (f(t) >= 0.0) return t;
          hi = std::min(hi, t);
        }
    }
  } else if (std::abs(b) > 0.0) {
    const double t = -c / b;
    if (t >= 0.0 && t <= 1.0) {
      if (f(t) >= 0.0) return t;
      hi = std::min(hi, t);
    }
  }
  // bisection on [lo, hi]: f(lo) >= 0 (the mean is admissible), f(hi) < 0
  double lo = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

double euler_positivity_limiter(const MacroOps& ops, MacroPolynomial& poly,
                                const double* means,
                                const AdmissibleSetParams& params,
                                const std::vector<double>& check_xi) {
  const int nm = ops.degree() + 1;
  const double rho_bar = means[0];
  const double p_bar = pressure(means, params.gamma);
  if (!(rho_bar > -1e-11) || !(p_bar > -1e-11))
    throw MeanNotAdmissible("macro mean outside admissible set: rho=" +
                            std::to_string(rho_bar) +
                            " p=" + std::to_string(p_bar));
  // Near-vacuum means: lower the floor so the limiter stays solvable. The
  // enforcement target sits a hair above the floor so that round-off in the
  // scaled coefficients cannot drop evaluated values below it.
  const double eps = std::min({params.eps, rho_bar, p_bar});
  const double target = eps * (1.0 + 1e-6);

  // stage 1: density
  double rho_min = rho_bar;
  for (double xi : check_xi)
    rho_min = std::min(rho_min, ops.poly_eval(poly, 0, xi));
  if (rho_min < target) {
    double th1 = rho_bar - rho_min > 0.0
                     ? (rho_bar - target) / (rho_bar - rho_min)
                     : 1.0;
    th1 = std::clamp(th1, 0.0, 1.0);
    poly.coef[0] = th1 * poly.coef[0] + (1.0 - th1) * rho_bar;
    for (int k = 1; k < nm; ++k) poly.coef[k] *= th1;
  }

  // stage 2: pressure line search at every check point
  double th2 = 1.0;
  double q[3];
  for (double xi : check_xi) {
    for (int v = 0; v < 3; ++v) q[v] = ops.poly_eval(poly, v, xi);
    if (pressure(q, params.gamma) < target)
      th2 = std::min(th2,
                     pressure_line_search(means, q, params.gamma, target));
  }
  if (th2 < 1.0) {
    for (int v = 0; v < 3; ++v) {
      poly.coef[v * nm] = th2 * poly.coef[v * nm] + (1.0 - th2) * means[v];
      for (int k = 1; k < nm; ++k) poly.coef[v * nm + k] *= th2;
    }
  }

  // The scalings above enforce the floor in exact arithmetic; cancellation in
  // the evaluated pressure can still shave it for extreme states, so contract
  // toward the (admissible) mean until the evaluated values clear the floor.
  for (int retry = 0; retry < 200; ++retry) {
    bool ok = true;
    for (double xi : check_xi) {
      for (int v = 0; v < 3; ++v) q[v] = ops.poly_eval(poly, v, xi);
      if (q[0] < eps * (1.0 - 1e-10) ||
          pressure(q, params.gamma) < eps * (1.0 - 1e-10)) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    for (int v = 0; v < 3; ++v) {
      poly.coef[v * nm] = 0.98 * poly.coef[v * nm] + 0.02 * means[v];
      for (int k = 1; k < nm; ++k) poly.coef[v * nm + k] *= 0.98;
    }
  }
  return eps;
}

double tvb_minmod(double a1, double a2, double a3, double m_tvb, double h) {
  if (std::abs(a1) <= m_tvb * h * h) return a1;
  const double s1 = a1 > 0 ? 1.0 : (a1 < 0 ? -1.0 : 0.0);
  const double s2 = a2 > 0 ? 1.0 : (a2 < 0 ? -1.0 : 0.0);
  const double s3 = a3 > 0 ? 1.0 : (a3 < 0 ? -1.0 : 0.0);
  if (s1 != s2 || s2 != s3) return 0.0;
  return s1 * std::min({std::abs(a1), std::abs(a2), std::abs(a3)});
}

void apply_tvb(const MacroOps& ops, DgState& s, double m_tvb,
               const BoundaryPair& bc) {
  if (ops.degree() == 0) return;
  const MeshComplex& mesh = ops.mesh();
  const int nv = ops.n_vars();
  const int nm = ops.degree() + 1;
  const double h = mesh.bg.h;

  // Global macro list in physical order with per-variable means.
  struct Entry {
    int sub, macro;
  };
  std::vector<Entry> order;
  for (int i = 0; i < mesh.n_subdomains(); ++i)
    for (std::size_t m = 0; m < mesh.partition[i].macros.size(); ++m)
      order.push_back({i, static_cast<int>(m)});
  const int n = static_cast<int>(order.size());
  std::vector<double> means(static_cast<std::size_t>(n) * nv);
  for (int k = 0; k < n; ++k)
    ops.state_macro_means(s, order[k].sub, order[k].macro, &means[k * nv]);

  auto ghost_mean = [&](bool left_side, double* out) {
    const double* interior = left_side ? &means[0] : &means[(n - 1) * nv];
    const double* opposite = left_side ? &means[(n - 1) * nv] : &means[0];
    const BoundaryCondition& b = left_side ? bc.left : bc.right;
    if ((b.kind == BoundaryCondition::Kind::outflow ||
         b.kind == BoundaryCondition::Kind::inflow) &&
        n >= 2) {
      // linear extrapolation of the means keeps linear data unlimited
      const double* next = left_side ? &means[nv] : &means[(n - 2) * nv];
      for (int v = 0; v < nv; ++v) out[v] = 2.0 * interior[v] - next[v];
      return;
    }
    ghost_state(b, interior, opposite, s.time, nv, out);
  };

  std::vector<MacroPolynomial> polys(n);
  std::vector<bool> touched(n, false);
  for (int k = 0; k < n; ++k) {
    if (!s.macro_single[order[k].sub][order[k].macro]) continue;
    const MacroPolynomial poly = ops.extract(s, order[k].sub, order[k].macro);
    double gl[kMaxVars], gr[kMaxVars];
    const double* prev = k > 0 ? &means[(k - 1) * nv] : (ghost_mean(true, gl), gl);
    const double* next =
        k + 1 < n ? &means[(k + 1) * nv] : (ghost_mean(false, gr), gr);

    MacroPolynomial limited = poly;
    bool change = false;
    for (int v = 0; v < nv; ++v) {
      const double ubar = means[k * nv + v];
      const double dev_r = ops.poly_eval(poly, v, poly.xi_b) - ubar;
      const double dev_l = ubar - ops.poly_eval(poly, v, poly.xi_a);
      const double dp = next[v] - ubar;
      const double dm = ubar - prev[v];
      const double lim_r = tvb_minmod(dev_r, dm, dp, m_tvb, h);
      const double lim_l = tvb_minmod(dev_l, dm, dp, m_tvb, h);
      const double tol =
          1e-13 * (std::abs(dev_r) + std::abs(dev_l) + std::abs(ubar) + 1.0);
      if (std::abs(lim_r - dev_r) > tol || std::abs(lim_l - dev_l) > tol) {
        // limited linear with the same mean: slope from the P1 part of the
        // polynomial, minmod-limited against the mean differences
        const QuadratureRule rule = gauss_legendre(nm);
        double num = 0.0, den = 0.0;
        const double xm = 0.5 * (poly.xi_a + poly.xi_b);
        for (int qq = 0; qq < rule.size(); ++qq) {
          const double xi = poly.xi_a + (poly.xi_b - poly.xi_a) * rule.nodes[qq];
          const double w = rule.weights[qq];
          num += w * (xi - xm) * ops.poly_eval(poly, v, xi);
          den += w * (xi - xm) * (xi - xm);
        }
        const double slope_xi = num / den;           // d/dxi of the P1 part
        const double d1 = slope_xi * (poly.xi_b - xm);  // deviation of P1 part
        const double d_mod = tvb_minmod(d1, dm, dp, m_tvb, h);
        const double sl = d_mod / (poly.xi_b - xm);  // d/dxi of limited linear
        // rebuild: ubar + sl*(xi - xm) in the orthonormal frame
        for (int kk = 0; kk < nm; ++kk) limited.coef[v * nm + kk] = 0.0;
        limited.coef[v * nm + 0] = ubar - sl * (xm - 0.5);
        limited.coef[v * nm + 1] = sl / (2.0 * std::sqrt(3.0));
        change = true;
      }
    }
    if (change) {
      polys[k] = std::move(limited);
      touched[k] = true;
    }
  }
  for (int k = 0; k < n; ++k)
    if (touched[k]) ops.write_back(s, polys[k]);
}

}  // namespace cutdg
