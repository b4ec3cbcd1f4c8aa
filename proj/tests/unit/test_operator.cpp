#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "cutdg/exceptions.hpp"
#include "cutdg/operator.hpp"
#include "cutdg/reconstruction.hpp"
#include "cutdg/rng.hpp"
#include "cutdg/time_integration.hpp"

using namespace cutdg;

namespace {

MeshComplex middle_cut_mesh(int n, double x_l, double x_r, double alpha,
                            std::uint64_t seed) {
  const BackgroundMesh bg = build_background_mesh(x_l, x_r, n);
  const double len = x_r - x_l;
  return build_mesh_complex(
      bg,
      generate_interfaces(bg, x_l + 0.375 * len, x_l + 0.625 * len, alpha,
                          seed),
      0.2);
}

// test-only symmetric eigenvalue range via cyclic Jacobi
std::pair<double, double> sym_eig_range(std::vector<double> a, int n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p * n + q]) < 1e-300) continue;
        const double theta =
            0.5 * std::atan2(2.0 * a[p * n + q], a[q * n + q] - a[p * n + p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
  }
  double lo = a[0], hi = a[0];
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, a[i * n + i]);
    hi = std::max(hi, a[i * n + i]);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("uncut mass blocks are |I_j|-scaled identities") {
  const BackgroundMesh bg = build_background_mesh(0.0, 2.0, 20);
  const MeshComplex mc = build_mesh_complex(bg, InterfaceSet{}, 0.2);
  SemiDiscreteOperator op(mc, advection_flux(), 2, 0.25, 0.75);
  const auto block = op.mass_block_dense(0, 5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(block[i * 3 + j] ==
            doctest::Approx(i == j ? bg.h : 0.0).epsilon(1e-13));
}

TEST_CASE("two-member macro block is SPD and its penalty part has rank <= 2") {
  const BackgroundMesh bg = build_background_mesh(0.0, 2.0, 20);
  InterfaceSet one;
  one.interfaces.push_back({10, 0.05});
  const MeshComplex mc = build_mesh_complex(bg, one, 0.2);
  SemiDiscreteOperator op(mc, advection_flux(), 1, 0.25, 0.75);
  // subdomain 0: last macro contains the small piece
  const int m = static_cast<int>(mc.partition[0].macros.size()) - 1;
  REQUIRE(mc.partition[0].macros[m].members() == 2);
  const auto a = op.mass_block_dense(0, m);
  REQUIRE(a.size() == 16);
  const auto [lo, hi] = sym_eig_range(a, 4);
  CHECK(lo > 0.0);

  // penalty part = block minus the member cut-mass diagonal blocks
  SemiDiscreteOperator raw(mc, advection_flux(), 1, 0.25, 1e-13);
  const auto mass_only = raw.mass_block_dense(0, m);
  std::vector<double> j1(16);
  for (int i = 0; i < 16; ++i) j1[i] = a[i] - mass_only[i];
  // vectors orthogonal to both jump vectors must be annihilated
  const PolyBasis basis(1);
  std::array<double, 4> g0{-basis.value(0, 1.0), -basis.value(1, 1.0),
                           basis.value(0, 0.0), basis.value(1, 0.0)};
  std::array<double, 4> g1{-basis.deriv(0, 1.0, 1), -basis.deriv(1, 1.0, 1),
                           basis.deriv(0, 0.0, 1), basis.deriv(1, 0.0, 1)};
  SplitMix64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    std::array<double, 4> v;
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    auto dot = [&](const std::array<double, 4>& a4,
                   const std::array<double, 4>& b4) {
      double acc = 0;
      for (int i = 0; i < 4; ++i) acc += a4[i] * b4[i];
      return acc;
    };
    const double n0 = dot(g0, g0), n1 = dot(g1, g1);
    const double c0 = dot(v, g0) / n0;
    for (int i = 0; i < 4; ++i) v[i] -= c0 * g0[i];
    const double c1 = dot(v, g1) / dot(g1, g1);
    for (int i = 0; i < 4; ++i) v[i] -= c1 * g1[i];
    (void)n1;
    for (int i = 0; i < 4; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 4; ++j) acc += j1[i * 4 + j] * v[j];
      CHECK(std::abs(acc) < 1e-10);
    }
  }
}

TEST_CASE("stabilization controls the small-cut conditioning") {
  std::vector<double> cond_raw, cond_stab;
  for (double alpha : {1e-1, 1e-2, 1e-3}) {
    const BackgroundMesh bg = build_background_mesh(0.0, 2.0, 20);
    InterfaceSet one;
    one.interfaces.push_back({10, alpha});
    const MeshComplex mc = build_mesh_complex(bg, one, 0.2);
    const int m = static_cast<int>(mc.partition[0].macros.size()) - 1;
    SemiDiscreteOperator nearly_raw(mc, advection_flux(), 1, 0.25, 1e-30);
    SemiDiscreteOperator stab(mc, advection_flux(), 1, 0.25, 0.75);
    const auto [lo_r, hi_r] = sym_eig_range(nearly_raw.mass_block_dense(0, m), 4);
    const auto [lo_s, hi_s] = sym_eig_range(stab.mass_block_dense(0, m), 4);
    cond_raw.push_back(hi_r / lo_r);
    cond_stab.push_back(hi_s / lo_s);
  }
  // unstabilized cut-block conditioning blows up as the cut shrinks
  CHECK(cond_raw[1] > 10.0 * cond_raw[0]);
  CHECK(cond_raw[2] > 10.0 * cond_raw[1]);
  // stabilized blocks stay well conditioned down to tiny cuts
  for (double c : cond_stab) CHECK(c < 1e3);
}

TEST_CASE("stabilized projection reproduces polynomials of degree <= p") {
  SplitMix64 rng(9);
  for (int p = 0; p <= 3; ++p) {
    const MeshComplex mc = middle_cut_mesh(20, 0.0, 2.0, 0.1, 5 + p);
    SemiDiscreteOperator op(mc, advection_flux(), p, 0.25, 0.75);
    std::vector<double> poly(p + 1);
    for (double& c : poly) c = rng.uniform(-1.0, 1.0);
    auto f = [&](double x) {
      double acc = 0.0;
      for (int k = p; k >= 0; --k) acc = acc * x + poly[k];
      return acc;
    };
    const DgState s =
        op.l2_project_initial([&](double x, double* u) { u[0] = f(x); });
    const PolyBasis basis(p);
    for (int pt = 0; pt < 40; ++pt) {
      const double x = rng.uniform(0.0, 2.0);
      double u;
      eval_at(s, mc, basis, x, &u);
      CHECK(u == doctest::Approx(f(x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("projection of a constant is exact on any cut configuration") {
  const MeshComplex mc = middle_cut_mesh(20, 0.0, 2.0, 0.01, 123);
  SemiDiscreteOperator op(mc, advection_flux(), 3, 0.25, 0.75);
  const DgState s =
      op.l2_project_initial([](double, double* u) { u[0] = 1.0; });
  const PolyBasis basis(3);
  SplitMix64 rng(2);
  for (int pt = 0; pt < 50; ++pt) {
    double u;
    eval_at(s, mc, basis, rng.uniform(0.0, 2.0), &u);
    CHECK(u == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("projection converges at order p+1") {
  // sin(pi x), p = 2: L2 error drops ~8x per refinement
  double prev = 0.0;
  for (int level = 0; level < 3; ++level) {
    const int n = 20 << level;
    const MeshComplex mc = middle_cut_mesh(n, 0.0, 2.0, 0.1, 11 + level);
    SemiDiscreteOperator op(mc, advection_flux(), 2, 0.25, 0.75);
    const DgState s = op.l2_project_initial(
        [](double x, double* u) { u[0] = std::sin(M_PI * x); });
    // L2 error by fine quadrature
    const PolyBasis basis(2);
    double err2 = 0.0;
    const QuadratureRule rule = gauss_legendre(8);
    for (const ActiveMesh& am : mc.active)
      for (const CutCell& c : am.cells)
        for (int q = 0; q < rule.size(); ++q) {
          const double x = c.a + (c.b - c.a) * rule.nodes[q];
          double u;
          eval_cell(s, basis, am.subdomain,
                    static_cast<int>(&c - am.cells.data()),
                    (x - mc.bg.element_left(c.element)) / mc.bg.h, &u);
          const double e = u - std::sin(M_PI * x);
          err2 += rule.weights[q] * c.length() * e * e;
        }
    const double err = std::sqrt(err2);
    if (level > 0) CHECK(prev / err > 6.0);
    prev = err;
  }
}

TEST_CASE("lax_friedrichs_flux examples") {
  double out[3];
  const FluxModel burgers = burgers_flux();
  double ul = 1.0, ur = 0.0;
  lax_friedrichs_flux(burgers, 0.0, &ul, &ur, 1.0, out);
  CHECK(out[0] == doctest::Approx(0.75));

  double z = 0.37;
  lax_friedrichs_flux(burgers, 0.0, &z, &z, 1.0, out);
  CHECK(out[0] == doctest::Approx(0.5 * z * z));

  const FluxModel euler = euler_flux(1.4);
  double ue[3] = {1.0, 0.0, 2.5};
  lax_friedrichs_flux(euler, 0.0, ue, ue, 2.0, out);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(1.0));
  CHECK(out[2] == doctest::Approx(0.0));
}

TEST_CASE("global wave speed") {
  const MeshComplex mc = middle_cut_mesh(20, 0.0, 2.0, 0.1, 3);

  SemiDiscreteOperator adv(mc, advection_flux(), 1, 0.25, 0.75);
  DgState s = adv.make_state();
  for (auto& block : s.coeffs)
    for (double& c : block) c = 0.123;
  CHECK(adv.global_lambda(s) == doctest::Approx(1.0));

  SemiDiscreteOperator bur(mc, burgers_flux(), 0, 0.25, 0.75);
  DgState sb = bur.make_state();
  SplitMix64 rng(4);
  for (auto& block : sb.coeffs)
    for (double& c : block) c = rng.uniform(-1.0, 1.0);
  const double lam = bur.global_lambda(sb);
  CHECK(lam <= 1.0);
  CHECK(lam > 0.3);

  // Sod data: lambda = sqrt(1.4) from the left state; cuts away from the
  // jump so the stabilized projection reproduces the constants exactly
  const BackgroundMesh bge = build_background_mesh(0.0, 1.0, 20);
  const MeshComplex me = build_mesh_complex(
      bge, generate_interfaces(bge, 0.1, 0.3, 0.01, 3), 0.2);
  SemiDiscreteOperator eop(me, euler_flux(1.4), 1, 0.25, 0.75);
  DgState se = eop.l2_project_initial([](double x, double* u) {
    if (x <= 0.5) {
      u[0] = 1.0;
      u[1] = 0.0;
      u[2] = 1.0 / 0.4;
    } else {
      u[0] = 0.125;
      u[1] = 0.0;
      u[2] = 0.1 / 0.4;
    }
  });
  CHECK(eop.global_lambda(se) ==
        doctest::Approx(std::sqrt(1.4)).epsilon(1e-6));
}

TEST_CASE("constant states are steady (free stream)") {
  const MeshComplex mc = middle_cut_mesh(20, 0.0, 2.0, 0.01, 8);
  for (int p = 0; p <= 3; ++p) {
    SemiDiscreteOperator op(mc, burgers_flux(), p, 0.25, 0.75);
    DgState s = op.make_state();
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (int c = 0; c < mc.active[i].size(); ++c)
        s.cell_var(i, c, 0)[0] = 0.8;
    const DgState s2 =
        op.forward_euler_update(s, 1e-3, periodic_pair(), 1.0);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
      for (std::size_t k = 0; k < s.coeffs[i].size(); ++k)
        CHECK(std::abs(s2.coeffs[i][k] - s.coeffs[i][k]) < 1e-13);
  }
}

TEST_CASE("p=0 forward Euler reduces to the macro flux-difference formula") {
  const BackgroundMesh bg = build_background_mesh(0.0, 2.0, 20);
  InterfaceSet one;
  one.interfaces.push_back({10, 0.04});
  const MeshComplex mc = build_mesh_complex(bg, one, 0.2);
  SemiDiscreteOperator op(mc, burgers_flux(), 0, 0.25, 0.75);
  MacroOps ops(mc, 0, 1);
  const PolyBasis basis(0);
  DgState s = op.make_state();
  SplitMix64 rng(6);
  for (auto& block : s.coeffs)
    for (double& c : block) c = rng.uniform(0.0, 1.0);
  apply_reconstruction(ops, s, ReconstructionMode::all);

  const double lam = op.global_lambda(s);
  const double dt = 0.9 * mc.delta * mc.bg.h / lam;
  DgState next = op.forward_euler_update(s, dt, periodic_pair(), lam);
  apply_reconstruction(ops, next, ReconstructionMode::all);

  auto value_at = [&](const DgState& st, double x) {
    double y = x;
    if (y < 0.0) y += 2.0;
    if (y > 2.0) y -= 2.0;
    double u;
    eval_at(st, mc, basis, y, &u);
    return u;
  };
  auto f = [](double u) { return 0.5 * u * u; };
  for (int i = 0; i < mc.n_subdomains(); ++i)
    for (std::size_t m = 0; m < mc.partition[i].macros.size(); ++m) {
      const MacroElement& me = mc.partition[i].macros[m];
      const double im = me.length();
      const double tiny = 1e-9 * mc.bg.h;
      const double b = value_at(s, 0.5 * (me.im_a + me.im_b));
      const double a = value_at(s, me.im_a - tiny);
      const double c = value_at(s, me.im_b + tiny);
      const double expect = (1.0 - lam * dt / im) * b +
                            dt / (2.0 * im) * (lam * c - f(c)) +
                            dt / (2.0 * im) * (lam * a + f(a));
      const double got = value_at(next, 0.5 * (me.im_a + me.im_b));
      CHECK(std::abs(got - expect) < 1e-13);
      CHECK(got >= std::min({a, b, c}) - 1e-13);
      CHECK(got <= std::max({a, b, c}) + 1e-13);
    }
}

TEST_CASE("first order in time (Richardson)") {
  const MeshComplex mc = middle_cut_mesh(20, 0.0, 2.0, 0.1, 21);
  SemiDiscreteOperator op(mc, advection_flux(), 2, 0.25, 0.75);
  const DgState s0 = op.l2_project_initial(
      [](double x, double* u) { u[0] = 1.0 + 0.5 * std::sin(M_PI * x); });
  auto defect = [&](double dt) {
    const DgState big = op.forward_euler_update(s0, dt, periodic_pair(), 1.0);
    DgState half = op.forward_euler_update(s0, dt / 2, periodic_pair(), 1.0);
    half = op.forward_euler_update(half, dt / 2, periodic_pair(), 1.0);
    double d = 0.0;
    for (std::size_t i = 0; i < big.coeffs.size(); ++i)
      for (std::size_t k = 0; k < big.coeffs[i].size(); ++k)
        d = std::max(d, std::abs(big.coeffs[i][k] - half.coeffs[i][k]));
    return d;
  };
  const double d1 = defect(1e-4);
  const double d2 = defect(5e-5);
  CHECK(d1 / d2 > 3.0);  // O(dt^2) defect halves twice per dt halving
  CHECK(d1 / d2 < 5.0);
}

TEST_CASE("total mass examples and conservation") {
  const MeshComplex mc = middle_cut_mesh(20, 0.0, 2.0, 0.1, 33);
  SemiDiscreteOperator op(mc, burgers_flux(), 2, 0.25, 0.75);
  MacroOps ops(mc, 2, 1);

  DgState ones = op.l2_project_initial(
      [](double, double* u) { u[0] = 1.0; });
  CHECK(op.total_mass(ones)[0] == doctest::Approx(2.0).epsilon(1e-13));

  DgState s = op.l2_project_initial(
      [](double x, double* u) { u[0] = 0.5 + 0.4 * std::sin(M_PI * x); });
  const double m0 = op.total_mass(s)[0];
  const double lam = op.global_lambda(s);
  const double dt = compute_dt(2, mc.delta, mc.bg.h, lam, 0.9);
  const DgState s2 = op.forward_euler_update(s, dt, periodic_pair(), lam);
  CHECK(std::abs(op.total_mass(s2)[0] - m0) <= 1e-12 * std::abs(m0));

  apply_reconstruction(ops, s, ReconstructionMode::all);
  CHECK(std::abs(op.total_mass(s)[0] - m0) <= 1e-12 * std::abs(m0));
}

TEST_CASE("penalty coupling is local to macro-elements") {
  // perturbing one cell changes the residual only inside its macro-element
  // and in cells that share an edge or interface with it
  const BackgroundMesh bg = build_background_mesh(0.0, 2.0, 20);
  InterfaceSet one;
  one.interfaces.push_back({10, 0.05});
  const MeshComplex mc = build_mesh_complex(bg, one, 0.2);
  SemiDiscreteOperator op(mc, advection_flux(), 2, 0.25, 0.75);
  DgState s = op.make_state();
  SplitMix64 rng(55);
  for (auto& block : s.coeffs)
    for (double& c : block) c = rng.uniform(-1.0, 1.0);

  const int sub = 0, cell = 4;  // interior uncut cell, singleton macro
  std::vector<std::vector<double>> r0, r1;
  double influx[3];
  op.residual(s, periodic_pair(), 1.0, r0, influx);
  s.cell_var(sub, cell, 0)[1] += 0.37;
  op.residual(s, periodic_pair(), 1.0, r1, influx);
  const int nm = 3;
  for (int i = 0; i < mc.n_subdomains(); ++i)
    for (int c = 0; c < mc.active[i].size(); ++c) {
      double d = 0.0;
      for (int k = 0; k < nm; ++k)
        d = std::max(d, std::abs(r1[i][c * nm + k] - r0[i][c * nm + k]));
      const bool neighbour = i == sub && std::abs(c - cell) <= 1;
      if (!neighbour) CHECK(d == 0.0);
      // advection with lambda = 1 upwinds exactly, so the flux into the
      // perturbed cell and its downwind neighbour must react
      if (i == sub && (c == cell || c == cell + 1)) CHECK(d > 0.0);
    }
}

TEST_CASE("ghost penalties annihilate single-macro polynomials") {
  // a state that is one global polynomial has zero J0 residual: compare the
  // residual with the penalty-skip flag on and off
  const MeshComplex mc = middle_cut_mesh(20, 0.0, 2.0, 0.1, 44);
  SemiDiscreteOperator op(mc, advection_flux(), 2, 0.25, 0.75);
  MacroOps ops(mc, 2, 1);
  DgState s = op.l2_project_initial(
      [](double x, double* u) { u[0] = 0.3 + 0.7 * x - 0.2 * x * x; });
  apply_reconstruction(ops, s, ReconstructionMode::all);
  DgState no_flags = s;
  for (auto& flags : no_flags.macro_single)
    std::fill(flags.begin(), flags.end(), 0);

  std::vector<std::vector<double>> r1, r2;
  double influx[3];
  op.residual(s, periodic_pair(), 1.0, r1, influx);
  op.residual(no_flags, periodic_pair(), 1.0, r2, influx);
  for (std::size_t i = 0; i < r1.size(); ++i)
    for (std::size_t k = 0; k < r1[i].size(); ++k)
      CHECK(std::abs(r1[i][k] - r2[i][k]) < 1e-12);
}
