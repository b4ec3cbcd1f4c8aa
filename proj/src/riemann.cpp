#include "cutdg/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace cutdg {

namespace {

// f_K(p) of the pressure function and its derivative.
void wave_fn(double p, const PrimitiveState& s, double c, double gamma,
             double& f, double& df) {
  if (p > s.p) {  // shock
    const double a = 2.0 / ((gamma + 1.0) * s.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * s.p;
    const double q = std::sqrt(a / (p + b));
    f = (p - s.p) * q;
    df = q * (1.0 - 0.5 * (p - s.p) / (p + b));
  } else {  // rarefaction
    const double pr = p / s.p;
    const double g1 = (gamma - 1.0) / (2.0 * gamma);
    f = 2.0 * c / (gamma - 1.0) * (std::pow(pr, g1) - 1.0);
    df = std::pow(pr, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c);
  }
}

}  // namespace

EulerRiemannSolver::EulerRiemannSolver(PrimitiveState left,
                                       PrimitiveState right, double gamma,
                                       double x0)
    : l_(left), r_(right), gamma_(gamma), x0_(x0) {
  cl_ = std::sqrt(gamma * l_.p / l_.rho);
  cr_ = std::sqrt(gamma * r_.p / r_.rho);
  const double du = r_.u - l_.u;
  const double du_crit = 2.0 * (cl_ + cr_) / (gamma - 1.0);
  if (du >= du_crit * (1.0 - 1e-13)) {
    vacuum_ = true;
    p_star_ = 0.0;
    u_star_ = 0.5 * (l_.u + r_.u);
    return;
  }
  // two-rarefaction initial guess
  const double g1 = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow(
      (cl_ + cr_ - 0.5 * (gamma - 1.0) * du) /
          (cl_ / std::pow(l_.p, g1) + cr_ / std::pow(r_.p, g1)),
      1.0 / g1);
  p = std::max(p, 1e-14 * std::min(l_.p, r_.p));
  double lo = 0.0, hi = std::max({p, l_.p, r_.p}) * 8.0;
  double f, df, fl, dfl, fr, dfr;
  for (int it = 0; it < 200; ++it) {
    wave_fn(p, l_, cl_, gamma_, fl, dfl);
    wave_fn(p, r_, cr_, gamma_, fr, dfr);
    f = fl + fr + du;
    df = dfl + dfr;
    if (f > 0.0)
      hi = p;
    else
      lo = p;
    double pn = p - f / df;
    if (!(pn > lo && pn < hi)) pn = 0.5 * (lo + hi);
    const double rel = std::abs(pn - p) / std::max(1e-300, 0.5 * (pn + p));
    p = pn;
    if (rel < 1e-14) break;
  }
  p_star_ = p;
  wave_fn(p, l_, cl_, gamma_, fl, dfl);
  wave_fn(p, r_, cr_, gamma_, fr, dfr);
  u_star_ = 0.5 * (l_.u + r_.u) + 0.5 * (fr - fl);
}

void EulerRiemannSolver::sample_primitive(double x, double t,
                                          PrimitiveState& out) const {
  if (t <= 0.0) {
    out = x <= x0_ ? l_ : r_;
    return;
  }
  const double xi = (x - x0_) / t;
  const double g = gamma_;
  const double beta = (g - 1.0) / (g + 1.0);

  if (vacuum_) {
    const double s_head_l = l_.u - cl_;
    const double s_tail_l = l_.u + 2.0 * cl_ / (g - 1.0);
    const double s_tail_r = r_.u - 2.0 * cr_ / (g - 1.0);
    const double s_head_r = r_.u + cr_;
    if (xi <= s_head_l) {
      out = l_;
    } else if (xi < s_tail_l) {
      const double u = (2.0 / (g + 1.0)) * (cl_ + 0.5 * (g - 1.0) * l_.u + xi);
      const double c = cl_ + 0.5 * (g - 1.0) * (l_.u - u);
      out.rho = l_.rho * std::pow(c / cl_, 2.0 / (g - 1.0));
      out.u = u;
      out.p = l_.p * std::pow(c / cl_, 2.0 * g / (g - 1.0));
    } else if (xi <= s_tail_r) {
      out.rho = 0.0;
      out.u = 0.5 * (s_tail_l + s_tail_r);
      out.p = 0.0;
    } else if (xi < s_head_r) {
      const double u = (2.0 / (g + 1.0)) * (-cr_ + 0.5 * (g - 1.0) * r_.u + xi);
      const double c = cr_ - 0.5 * (g - 1.0) * (r_.u - u);
      out.rho = r_.rho * std::pow(c / cr_, 2.0 / (g - 1.0));
      out.u = u;
      out.p = r_.p * std::pow(c / cr_, 2.0 * g / (g - 1.0));
    } else {
      out = r_;
    }
    return;
  }

  if (xi <= u_star_) {  // left of the contact
    if (p_star_ > l_.p) {  // left shock
      const double s = l_.u - cl_ * std::sqrt((g + 1.0) / (2.0 * g) *
                                                  p_star_ / l_.p +
                                              (g - 1.0) / (2.0 * g));
      if (xi <= s) {
        out = l_;
      } else {
        out.rho = l_.rho * (p_star_ / l_.p + beta) /
                  (beta * p_star_ / l_.p + 1.0);
        out.u = u_star_;
        out.p = p_star_;
      }
    } else {  // left rarefaction
      const double c_star = cl_ * std::pow(p_star_ / l_.p, (g - 1.0) / (2.0 * g));
      const double s_head = l_.u - cl_;
      const double s_tail = u_star_ - c_star;
      if (xi <= s_head) {
        out = l_;
      } else if (xi >= s_tail) {
        out.rho = l_.rho * std::pow(p_star_ / l_.p, 1.0 / g);
        out.u = u_star_;
        out.p = p_star_;
      } else {
        const double u = (2.0 / (g + 1.0)) * (cl_ + 0.5 * (g - 1.0) * l_.u + xi);
        const double c = cl_ + 0.5 * (g - 1.0) * (l_.u - u);
        out.rho = l_.rho * std::pow(c / cl_, 2.0 / (g - 1.0));
        out.u = u;
        out.p = l_.p * std::pow(c / cl_, 2.0 * g / (g - 1.0));
      }
    }
  } else {  // right of the contact
    if (p_star_ > r_.p) {  // right shock
      const double s = r_.u + cr_ * std::sqrt((g + 1.0) / (2.0 * g) *
                                                  p_star_ / r_.p +
                                              (g - 1.0) / (2.0 * g));
      if (xi >= s) {
        out = r_;
      } else {
        out.rho = r_.rho * (p_star_ / r_.p + beta) /
                  (beta * p_star_ / r_.p + 1.0);
        out.u = u_star_;
        out.p = p_star_;
      }
    } else {  // right rarefaction
      const double c_star = cr_ * std::pow(p_star_ / r_.p, (g - 1.0) / (2.0 * g));
      const double s_head = r_.u + cr_;
      const double s_tail = u_star_ + c_star;
      if (xi >= s_head) {
        out = r_;
      } else if (xi <= s_tail) {
        out.rho = r_.rho * std::pow(p_star_ / r_.p, 1.0 / g);
        out.u = u_star_;
        out.p = p_star_;
      } else {
        const double u = (2.0 / (g + 1.0)) * (-cr_ + 0.5 * (g - 1.0) * r_.u + xi);
        const double c = cr_ - 0.5 * (g - 1.0) * (r_.u - u);
        out.rho = r_.rho * std::pow(c / cr_, 2.0 / (g - 1.0));
        out.u = u;
        out.p = r_.p * std::pow(c / cr_, 2.0 * g / (g - 1.0));
      }
    }
  }
}

void EulerRiemannSolver::sample(double x, double t, double* cons) const {
  PrimitiveState s;
  sample_primitive(x, t, s);
  cons[0] = s.rho;
  cons[1] = s.rho * s.u;
  cons[2] = s.p / (gamma_ - 1.0) + 0.5 * s.rho * s.u * s.u;
}

}  // namespace cutdg
