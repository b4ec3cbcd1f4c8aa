#include "cutdg/operator.hpp"

#include <cmath>
#include <cstring>

#include "cutdg/exceptions.hpp"

namespace cutdg {

namespace {
double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}
}  // namespace

SemiDiscreteOperator::SemiDiscreteOperator(const MeshComplex& mesh,
                                           FluxModel flux, int p,
                                           double gamma0, double gamma1,
                                           PenaltyWeights weights,
                                           InterfaceFluxKind interface_flux)
    : mesh_(&mesh),
      flux_(flux),
      p_(p),
      gamma0_(gamma0),
      gamma1_(gamma1),
      weights_(weights),
      iface_flux_(interface_flux),
      basis_(p),
      vol_rule_(gauss_legendre(flux.nonlinear() ? 2 * (p + 2) : p + 2)),
      mass_rule_(gauss_legendre(p + 1)) {
  if (!(gamma0 > 0.0) || !(gamma1 > 0.0))
    throw ConfigError("operator: penalty parameters must be positive");
  wk_.resize(p + 1);
  for (int k = 0; k <= p; ++k) {
    const double f2 = factorial(k) * factorial(k);
    wk_[k] = weights_ == PenaltyWeights::scaled ? 1.0 / (f2 * (2.0 * k + 1.0))
                                                : 1.0 / f2;
  }
  assemble();
}

double SemiDiscreteOperator::subdomain_trace_xi(int sub, bool right) const {
  const ActiveMesh& am = mesh_->active[sub];
  const CutCell& c = right ? am.cells.back() : am.cells.front();
  const double x = right ? mesh_->subdomain_right(sub)
                         : mesh_->subdomain_left(sub);
  return (x - mesh_->bg.element_left(c.element)) / mesh_->bg.h;
}

void SemiDiscreteOperator::assemble() {
  const int nm = p_ + 1;
  const double h = mesh_->bg.h;
  phi0_.resize(nm);
  phi1_.resize(nm);
  basis_.eval_all(0.0, phi0_.data());
  basis_.eval_all(1.0, phi1_.data());

  const int ns = mesh_->n_subdomains();
  cellq_.resize(ns);
  macros_.resize(ns);
  trace_left_.resize(ns);
  trace_right_.resize(ns);

  for (int i = 0; i < ns; ++i) {
    const ActiveMesh& am = mesh_->active[i];
    cellq_[i].resize(am.size());
    for (int c = 0; c < am.size(); ++c) {
      const CutCell& cc = am.cells[c];
      const double el = mesh_->bg.element_left(cc.element);
      CellQuad& q = cellq_[i][c];
      const int nq = vol_rule_.size();
      q.x.resize(nq);
      q.w.resize(nq);
      q.phi.resize(nq * nm);
      q.dphi_dx.resize(nq * nm);
      for (int k = 0; k < nq; ++k) {
        const double x = cc.a + (cc.b - cc.a) * vol_rule_.nodes[k];
        const double xi = (x - el) / h;
        q.x[k] = x;
        q.w[k] = vol_rule_.weights[k] * cc.length();
        basis_.eval_all(xi, &q.phi[k * nm]);
        basis_.deriv_all(xi, 1, &q.dphi_dx[k * nm]);
        for (int m = 0; m < nm; ++m) q.dphi_dx[k * nm + m] /= h;
      }
    }

    trace_left_[i].resize(nm);
    trace_right_[i].resize(nm);
    basis_.eval_all(subdomain_trace_xi(i, false), trace_left_[i].data());
    basis_.eval_all(subdomain_trace_xi(i, true), trace_right_[i].data());

    const MacroElementPartition& part = mesh_->partition[i];
    macros_[i].resize(part.macros.size());
    for (std::size_t m = 0; m < part.macros.size(); ++m) {
      const MacroElement& me = part.macros[m];
      MacroData& md = macros_[i][m];
      const int nmem = me.members();
      const int dim = nmem * nm;
      md.dim = dim;
      md.dense.assign(dim * dim, 0.0);
      // member mass blocks over the cut intersections
      for (int j = 0; j < nmem; ++j) {
        const CutCell& cc = am.cells[me.first + j];
        const double el = mesh_->bg.element_left(cc.element);
        std::vector<double> phi(nm);
        for (int k = 0; k < mass_rule_.size(); ++k) {
          const double x = cc.a + (cc.b - cc.a) * mass_rule_.nodes[k];
          const double w = mass_rule_.weights[k] * cc.length();
          basis_.eval_all((x - el) / h, phi.data());
          for (int a = 0; a < nm; ++a)
            for (int b = 0; b < nm; ++b)
              md.dense[(j * nm + a) * dim + (j * nm + b)] +=
                  w * phi[a] * phi[b];
        }
      }
      // J1 contributions on macro-interior edges
      md.edges.resize(nmem - 1);
      for (int e = 0; e + 1 < nmem; ++e) {
        EdgeJump& ej = md.edges[e];
        ej.g.assign(p_ + 1, std::vector<double>(dim, 0.0));
        for (int k = 0; k <= p_; ++k) {
          std::vector<double> dl(nm), dr(nm);
          basis_.deriv_all(1.0, k, dl.data());
          basis_.deriv_all(0.0, k, dr.data());
          for (int mmode = 0; mmode < nm; ++mmode) {
            ej.g[k][e * nm + mmode] = -dl[mmode];
            ej.g[k][(e + 1) * nm + mmode] = dr[mmode];
          }
        }
        for (int k = 0; k <= p_; ++k) {
          const double coef = gamma1_ * wk_[k] * h;
          for (int a = 0; a < dim; ++a) {
            if (ej.g[k][a] == 0.0) continue;
            for (int b = 0; b < dim; ++b)
              md.dense[a * dim + b] += coef * ej.g[k][a] * ej.g[k][b];
          }
        }
      }
      if (!md.chol.factor(md.dense, dim))
        throw InvariantViolation(
            "stabilized mass block is not positive definite");
    }
  }
}

DgState SemiDiscreteOperator::make_state() const {
  return cutdg::make_state(*mesh_, p_, flux_.n_vars);
}

DgState SemiDiscreteOperator::l2_project_initial(
    const std::function<void(double, double*)>& u0) const {
  DgState s = make_state();
  const int nm = p_ + 1;
  const int nv = flux_.n_vars;
  const QuadratureRule rule = gauss_legendre(std::max(p_ + 2, 12));
  std::vector<double> phi(nm), uval(nv);
  for (int i = 0; i < mesh_->n_subdomains(); ++i) {
    const ActiveMesh& am = mesh_->active[i];
    const MacroElementPartition& part = mesh_->partition[i];
    for (std::size_t m = 0; m < part.macros.size(); ++m) {
      const MacroElement& me = part.macros[m];
      const int dim = macros_[i][m].dim;
      std::vector<double> rhs(static_cast<std::size_t>(nv) * dim, 0.0);
      for (int j = 0; j < me.members(); ++j) {
        const CutCell& cc = am.cells[me.first + j];
        const double el = mesh_->bg.element_left(cc.element);
        for (int k = 0; k < rule.size(); ++k) {
          const double x = cc.a + (cc.b - cc.a) * rule.nodes[k];
          const double w = rule.weights[k] * cc.length();
          basis_.eval_all((x - el) / mesh_->bg.h, phi.data());
          u0(x, uval.data());
          for (int v = 0; v < nv; ++v)
            for (int a = 0; a < nm; ++a)
              rhs[v * dim + j * nm + a] += w * uval[v] * phi[a];
        }
      }
      for (int v = 0; v < nv; ++v) {
        macros_[i][m].chol.solve(&rhs[v * dim]);
        for (int j = 0; j < me.members(); ++j)
          for (int a = 0; a < nm; ++a)
            s.cell_var(i, me.first + j, v)[a] = rhs[v * dim + j * nm + a];
      }
    }
  }
  return s;
}

double SemiDiscreteOperator::global_lambda(const DgState& s) const {
  const QuadratureRule gl = gauss_lobatto(lobatto_order_for_degree(p_));
  double lam = 1e-12;
  std::vector<double> u(flux_.n_vars);
  auto sample = [&](int i, int c, double x) {
    const CutCell& cc = mesh_->active[i].cells[c];
    const double xi =
        (x - mesh_->bg.element_left(cc.element)) / mesh_->bg.h;
    eval_cell(s, basis_, i, c, xi, u.data());
    lam = std::max(lam, flux_.wave_speed(x, u.data()));
  };
  for (int i = 0; i < mesh_->n_subdomains(); ++i) {
    const ActiveMesh& am = mesh_->active[i];
    const MacroElementPartition& part = mesh_->partition[i];
    for (int c = 0; c < am.size(); ++c) {
      const CutCell& cc = am.cells[c];
      for (int k = 0; k < gl.size(); ++k)
        sample(i, c, cc.a + (cc.b - cc.a) * gl.nodes[k]);
    }
    for (const MacroElement& me : part.macros) {
      for (int k = 0; k < gl.size(); ++k) {
        const double x = me.im_a + (me.im_b - me.im_a) * gl.nodes[k];
        int c = me.first;
        while (c < me.last && x > am.cells[c].b) ++c;
        sample(i, c, x);
      }
    }
  }
  return lam;
}

void SemiDiscreteOperator::residual(const DgState& s, const BoundaryPair& bc,
                                    double lambda,
                                    std::vector<std::vector<double>>& r,
                                    double* influx) const {
  const int nm = p_ + 1;
  const int nv = flux_.n_vars;
  const int ns = mesh_->n_subdomains();
  r.resize(ns);
  for (int i = 0; i < ns; ++i) r[i].assign(s.coeffs[i].size(), 0.0);

  double uval[kMaxVars], fval[kMaxVars];
  double ul[kMaxVars], ur[kMaxVars], fhat[kMaxVars];

  // volume terms (f(u), v_x)_K
  for (int i = 0; i < ns; ++i) {
    const ActiveMesh& am = mesh_->active[i];
    for (int c = 0; c < am.size(); ++c) {
      const CellQuad& q = cellq_[i][c];
      const int nq = static_cast<int>(q.x.size());
      double* rc = r[i].data() + static_cast<std::size_t>(c) * nv * nm;
      const double* sc = s.cell(i, c);
      for (int k = 0; k < nq; ++k) {
        const double* phi = &q.phi[k * nm];
        const double* dphi = &q.dphi_dx[k * nm];
        for (int v = 0; v < nv; ++v) {
          double acc = 0.0;
          for (int m = 0; m < nm; ++m) acc += sc[v * nm + m] * phi[m];
          uval[v] = acc;
        }
        flux_.eval(q.x[k], uval, fval);
        const double w = q.w[k];
        for (int v = 0; v < nv; ++v) {
          const double wf = w * fval[v];
          for (int m = 0; m < nm; ++m) rc[v * nm + m] += wf * dphi[m];
        }
      }
    }
  }

  // interior edges of each active mesh (shared background edges)
  for (int i = 0; i < ns; ++i) {
    const ActiveMesh& am = mesh_->active[i];
    for (int c = 0; c + 1 < am.size(); ++c) {
      const double xe = mesh_->bg.element_right(am.cells[c].element);
      const double* scl = s.cell(i, c);
      const double* scr = s.cell(i, c + 1);
      for (int v = 0; v < nv; ++v) {
        double al = 0.0, ar = 0.0;
        for (int m = 0; m < nm; ++m) {
          al += scl[v * nm + m] * phi1_[m];
          ar += scr[v * nm + m] * phi0_[m];
        }
        ul[v] = al;
        ur[v] = ar;
      }
      lax_friedrichs_flux(flux_, xe, ul, ur, lambda, fhat);
      double* rl = r[i].data() + static_cast<std::size_t>(c) * nv * nm;
      double* rr = r[i].data() + static_cast<std::size_t>(c + 1) * nv * nm;
      for (int v = 0; v < nv; ++v)
        for (int m = 0; m < nm; ++m) {
          rl[v * nm + m] -= fhat[v] * phi1_[m];
          rr[v * nm + m] += fhat[v] * phi0_[m];
        }
    }
  }

  // subdomain interfaces
  for (int g = 0; g + 1 < ns; ++g) {
    const int il = g, ir = g + 1;
    const int cl = mesh_->active[il].size() - 1;
    const double xg = mesh_->interface_position(g);
    const double* scl = s.cell(il, cl);
    const double* scr = s.cell(ir, 0);
    for (int v = 0; v < nv; ++v) {
      double al = 0.0, ar = 0.0;
      for (int m = 0; m < nm; ++m) {
        al += scl[v * nm + m] * trace_right_[il][m];
        ar += scr[v * nm + m] * trace_left_[ir][m];
      }
      ul[v] = al;
      ur[v] = ar;
    }
    if (iface_flux_ == InterfaceFluxKind::left_value) {
      // upwind single-valued coupling: the left-region flux of the left trace
      const CutCell& cc = mesh_->active[il].cells[cl];
      flux_.eval(0.5 * (cc.a + cc.b), ul, fhat);
    } else {
      lax_friedrichs_flux(flux_, xg, ul, ur, lambda, fhat);
    }
    double* rl = r[il].data() + static_cast<std::size_t>(cl) * nv * nm;
    double* rr = r[ir].data();
    for (int v = 0; v < nv; ++v)
      for (int m = 0; m < nm; ++m) {
        rl[v * nm + m] -= fhat[v] * trace_right_[il][m];
        rr[v * nm + m] += fhat[v] * trace_left_[ir][m];
      }
  }

  // domain boundaries (ghost states at s.time)
  {
    double uin_l[kMaxVars], uin_r[kMaxVars], ghost[kMaxVars];
    const int last_sub = ns - 1;
    const int last_cell = mesh_->active[last_sub].size() - 1;
    const double* sc0 = s.cell(0, 0);
    const double* scn = s.cell(last_sub, last_cell);
    for (int v = 0; v < nv; ++v) {
      double a0 = 0.0, an = 0.0;
      for (int m = 0; m < nm; ++m) {
        a0 += sc0[v * nm + m] * trace_left_[0][m];
        an += scn[v * nm + m] * trace_right_[last_sub][m];
      }
      uin_l[v] = a0;
      uin_r[v] = an;
    }
    ghost_state(bc.left, uin_l, uin_r, s.time, nv, ghost);
    lax_friedrichs_flux(flux_, mesh_->phys_left, ghost, uin_l, lambda, fhat);
    double* r0 = r[0].data();
    for (int v = 0; v < nv; ++v) {
      influx[v] = fhat[v];
      for (int m = 0; m < nm; ++m)
        r0[v * nm + m] += fhat[v] * trace_left_[0][m];
    }
    ghost_state(bc.right, uin_r, uin_l, s.time, nv, ghost);
    lax_friedrichs_flux(flux_, mesh_->phys_right, uin_r, ghost, lambda, fhat);
    double* rn =
        r[last_sub].data() + static_cast<std::size_t>(last_cell) * nv * nm;
    for (int v = 0; v < nv; ++v) {
      influx[v] -= fhat[v];
      for (int m = 0; m < nm; ++m)
        rn[v * nm + m] -= fhat[v] * trace_right_[last_sub][m];
    }
  }

  // explicit ghost penalty J0, skipped on macros holding one polynomial
  for (int i = 0; i < ns; ++i) {
    const MacroElementPartition& part = mesh_->partition[i];
    for (std::size_t m = 0; m < part.macros.size(); ++m) {
      if (s.macro_single[i][m]) continue;
      const MacroElement& me = part.macros[m];
      const MacroData& md = macros_[i][m];
      if (md.edges.empty()) continue;
      const double* base = s.cell(i, me.first);
      double* rb = r[i].data() +
                   static_cast<std::size_t>(me.first) * nv * nm;
      for (const EdgeJump& ej : md.edges) {
        for (int k = 0; k <= p_; ++k) {
          const double coef = gamma0_ * wk_[k];
          const std::vector<double>& gk = ej.g[k];
          for (int v = 0; v < nv; ++v) {
            double jump = 0.0;
            for (int j = 0; j < me.members(); ++j)
              for (int mm = 0; mm < nm; ++mm)
                jump += gk[j * nm + mm] * base[(j * nv + v) * nm + mm];
            const double cj = coef * jump;
            if (cj == 0.0) continue;
            for (int j = 0; j < me.members(); ++j)
              for (int mm = 0; mm < nm; ++mm)
                rb[(j * nv + v) * nm + mm] -= cj * gk[j * nm + mm];
          }
        }
      }
    }
  }
}

DgState SemiDiscreteOperator::forward_euler_update(const DgState& s, double dt,
                                                   const BoundaryPair& bc,
                                                   double lambda) const {
  if (!(dt > 0.0)) throw ConfigError("forward Euler: dt must be positive");
  const int nm = p_ + 1;
  const int nv = flux_.n_vars;
  double influx[kMaxVars] = {0.0, 0.0, 0.0};
  std::vector<std::vector<double>> r;
  residual(s, bc, lambda, r, influx);

  DgState out = s;
  out.time = s.time + dt;
  for (int v = 0; v < nv; ++v)
    out.boundary_influx[v] = s.boundary_influx[v] + dt * influx[v];
  std::vector<double> rhs;
  for (int i = 0; i < mesh_->n_subdomains(); ++i) {
    const MacroElementPartition& part = mesh_->partition[i];
    std::fill(out.macro_single[i].begin(), out.macro_single[i].end(), 0);
    for (std::size_t m = 0; m < part.macros.size(); ++m) {
      const MacroElement& me = part.macros[m];
      const MacroData& md = macros_[i][m];
      const int dim = md.dim;
      rhs.resize(dim);
      for (int v = 0; v < nv; ++v) {
        for (int j = 0; j < me.members(); ++j) {
          const double* rr = r[i].data() +
                             static_cast<std::size_t>(me.first + j) * nv * nm;
          for (int mm = 0; mm < nm; ++mm)
            rhs[j * nm + mm] = dt * rr[v * nm + mm];
        }
        md.chol.solve(rhs.data());
        for (int j = 0; j < me.members(); ++j) {
          double* oc = out.cell_var(i, me.first + j, v);
          for (int mm = 0; mm < nm; ++mm) oc[mm] += rhs[j * nm + mm];
        }
      }
    }
  }
  return out;
}

std::vector<double> SemiDiscreteOperator::total_mass(const DgState& s) const {
  const int nm = p_ + 1;
  const int nv = flux_.n_vars;
  std::vector<double> mass(nv, 0.0);
  std::vector<double> phi(nm);
  for (int i = 0; i < mesh_->n_subdomains(); ++i) {
    const ActiveMesh& am = mesh_->active[i];
    for (int c = 0; c < am.size(); ++c) {
      const CutCell& cc = am.cells[c];
      const double el = mesh_->bg.element_left(cc.element);
      for (int k = 0; k < mass_rule_.size(); ++k) {
        const double x = cc.a + (cc.b - cc.a) * mass_rule_.nodes[k];
        const double w = mass_rule_.weights[k] * cc.length();
        basis_.eval_all((x - el) / mesh_->bg.h, phi.data());
        const double* sc = s.cell(i, c);
        for (int v = 0; v < nv; ++v) {
          double acc = 0.0;
          for (int m = 0; m < nm; ++m) acc += sc[v * nm + m] * phi[m];
          mass[v] += w * acc;
        }
      }
    }
  }
  return mass;
}

void SemiDiscreteOperator::macro_means(const DgState& s, int sub, int m,
                                       double* out) const {
  const int nm = p_ + 1;
  const int nv = flux_.n_vars;
  const MacroElement& me = mesh_->partition[sub].macros[m];
  const ActiveMesh& am = mesh_->active[sub];
  std::vector<double> phi(nm);
  for (int v = 0; v < nv; ++v) out[v] = 0.0;
  for (int j = 0; j < me.members(); ++j) {
    const CutCell& cc = am.cells[me.first + j];
    const double el = mesh_->bg.element_left(cc.element);
    for (int k = 0; k < mass_rule_.size(); ++k) {
      const double x = cc.a + (cc.b - cc.a) * mass_rule_.nodes[k];
      const double w = mass_rule_.weights[k] * cc.length();
      basis_.eval_all((x - el) / mesh_->bg.h, phi.data());
      const double* sc = s.cell(sub, me.first + j);
      for (int v = 0; v < nv; ++v) {
        double acc = 0.0;
        for (int mm = 0; mm < nm; ++mm) acc += sc[v * nm + mm] * phi[mm];
        out[v] += w * acc;
      }
    }
  }
  for (int v = 0; v < nv; ++v) out[v] /= me.length();
}

std::vector<double> SemiDiscreteOperator::mass_block_dense(int sub,
                                                           int m) const {
  return macros_[sub][m].dense;
}

}  // namespace cutdg
