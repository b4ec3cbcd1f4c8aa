#include "cutdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cutdg/exceptions.hpp"
#include "cutdg/rng.hpp"

namespace cutdg {

int MeshComplex::subdomain_of(double x) const {
  const int ns = n_subdomains();
  for (int i = 0; i < ns - 1; ++i)
    if (x <= interface_position(i)) return i;
  return ns - 1;
}

BackgroundMesh build_background_mesh(double x_left, double x_right, int n) {
  if (!(x_left < x_right))
    throw ConfigError("background mesh: degenerate domain");
  if (n < 4) throw ConfigError("background mesh: need at least 4 elements");
  BackgroundMesh m;
  m.x_left = x_left;
  m.x_right = x_right;
  m.n_elements = n;
  m.h = (x_right - x_left) / n;
  m.edges.resize(n + 1);
  for (int j = 0; j <= n; ++j)
    m.edges[j] = x_left + (x_right - x_left) * (static_cast<double>(j) / n);
  m.edges[0] = x_left;
  m.edges[n] = x_right;
  return m;
}

InterfaceSet generate_interfaces(const BackgroundMesh& mesh, double cut_lo,
                                 double cut_hi, double alpha_cap,
                                 std::uint64_t seed) {
  if (!(alpha_cap > 0.0 && alpha_cap < 1.0))
    throw ConfigError("generate_interfaces: alpha_cap must be in (0,1)");
  InterfaceSet set;
  set.seed = seed;
  SplitMix64 rng(seed);
  const double tol = 1e-12 * mesh.h;
  for (int j = 0; j < mesh.n_elements; ++j) {
    const double xl = mesh.element_left(j);
    // one interface per element whose left edge lies in [cut_lo, cut_hi)
    if (xl >= cut_lo - tol && xl < cut_hi - tol) {
      const double s = rng.uniform(1e-6, 1.0);
      double alpha = s * alpha_cap;
      if (alpha < 1e-12) {
        std::fprintf(stderr,
                     "cutdg: clamping degenerate cut fraction %.3e to 1e-12 "
                     "in element %d\n",
                     alpha, j);
        alpha = 1e-12;
      }
      set.interfaces.push_back({j, alpha});
    }
  }
  return set;
}

UnfittedBoundaryMesh build_unfitted_boundary_mesh(double x_l, double x_r,
                                                  int n, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ConfigError("unfitted boundary mesh: alpha must be in (0,1]");
  if (!(x_l < x_r)) throw ConfigError("unfitted boundary mesh: x_l >= x_r");
  UnfittedBoundaryMesh out;
  const double h = (x_r - x_l) / (n - 1 + 2.0 * alpha);
  const double x_left = x_l - (1.0 - alpha) * h;
  const double x_right = x_r + (1.0 - alpha) * h;
  out.bg = build_background_mesh(x_left, x_right, n + 1);
  out.phys_left = x_l;
  out.phys_right = x_r;
  out.boundary_cuts.seed = 0;
  if (alpha < 1.0) {
    out.boundary_cuts.interfaces.push_back({0, 1.0 - alpha});
    out.boundary_cuts.interfaces.push_back({n, alpha});
  }
  return out;
}

std::vector<ActiveMesh> build_active_meshes(const BackgroundMesh& mesh,
                                            const InterfaceSet& ifaces,
                                            double phys_left,
                                            double phys_right) {
  const int ns = ifaces.size() + 1;
  // subdomain bounds: [phys_left, Gamma_1, ..., phys_right]
  std::vector<double> bounds(ns + 1);
  bounds[0] = phys_left;
  for (int i = 0; i < ifaces.size(); ++i) {
    const Interface& g = ifaces.interfaces[i];
    bounds[i + 1] = mesh.element_left(g.element) + g.alpha * mesh.h;
  }
  bounds[ns] = phys_right;
  for (int i = 0; i < ns; ++i)
    if (!(bounds[i] < bounds[i + 1]))
      throw ConfigError("active meshes: subdomain bounds not increasing");

  std::vector<ActiveMesh> out(ns);
  const double tol = 1e-12 * mesh.h;
  for (int i = 0; i < ns; ++i) {
    out[i].subdomain = i;
    const double lo = bounds[i], hi = bounds[i + 1];
    for (int j = 0; j < mesh.n_elements; ++j) {
      const double a = std::max(mesh.element_left(j), lo);
      const double b = std::min(mesh.element_right(j), hi);
      if (b - a > tol) {
        CutCell c;
        c.element = j;
        c.a = a;
        c.b = b;
        c.cut_left = a > mesh.element_left(j) + tol;
        c.cut_right = b < mesh.element_right(j) - tol;
        out[i].cells.push_back(c);
      }
    }
  }
  return out;
}

MacroElementPartition partition_macro_elements(const ActiveMesh& active,
                                               double h, double delta) {
  const int n = active.size();
  MacroElementPartition part;
  part.macro_of_cell.assign(n, -1);
  std::vector<bool> large(n);
  bool any_large = false;
  for (int c = 0; c < n; ++c) {
    large[c] = active.cells[c].length() / h >= delta;
    any_large = any_large || large[c];
  }
  if (!any_large)
    throw NoLargeElement("subdomain " + std::to_string(active.subdomain) +
                         " has no element with |K|/|I_j| >= delta");

  // Attach each small cell to an adjacent large cell, preferring the left
  // neighbour; 1D runs have small cells only at the ends so neighbours of a
  // small cell are large whenever they exist.
  std::vector<int> owner_of(n, -1);
  for (int c = 0; c < n; ++c)
    if (large[c]) owner_of[c] = c;
  for (int c = 0; c < n; ++c) {
    if (large[c]) continue;
    const bool left_ok = c > 0 && large[c - 1];
    const bool right_ok = c + 1 < n && large[c + 1];
    if (left_ok)
      owner_of[c] = c - 1;
    else if (right_ok)
      owner_of[c] = c + 1;
    else
      throw NoLargeElement(
          "small element without a large neighbour in subdomain " +
          std::to_string(active.subdomain));
  }

  // Group contiguous cells sharing an owner into macro-elements.
  int c = 0;
  while (c < n) {
    int first = c;
    const int owner = owner_of[c];
    int last = c;
    while (last + 1 < n && owner_of[last + 1] == owner) ++last;
    MacroElement m;
    m.first = first;
    m.last = last;
    m.owner = owner;
    m.im_a = active.cells[first].a;
    m.im_b = active.cells[last].b;
    const double im = m.im_b - m.im_a;
    for (int k = first; k <= last; ++k) {
      m.weights.push_back(active.cells[k].length() / im);
      part.macro_of_cell[k] = static_cast<int>(part.macros.size());
    }
    part.macros.push_back(std::move(m));
    c = last + 1;
  }
  return part;
}

namespace {

MeshComplex build_complex(const BackgroundMesh& bg, const InterfaceSet& ifaces,
                          double delta, double phys_left, double phys_right) {
  // Validate interface placement: strictly interior to one element each,
  // no element hosting two.
  int prev_elem = -1;
  double prev_pos = -1e300;
  for (const Interface& g : ifaces.interfaces) {
    if (g.element < 0 || g.element >= bg.n_elements)
      throw ConfigError("interface outside mesh");
    if (!(g.alpha > 0.0 && g.alpha < 1.0))
      throw ConfigError("interface not strictly interior to its element");
    if (g.element == prev_elem)
      throw ConfigError("two interfaces share a background element");
    const double pos = bg.element_left(g.element) + g.alpha * bg.h;
    if (!(pos > prev_pos)) throw ConfigError("interfaces not increasing");
    prev_elem = g.element;
    prev_pos = pos;
  }
  MeshComplex mc;
  mc.bg = bg;
  mc.interfaces = ifaces;
  mc.delta = delta;
  mc.phys_left = phys_left;
  mc.phys_right = phys_right;
  mc.active = build_active_meshes(bg, ifaces, phys_left, phys_right);
  mc.partition.reserve(mc.active.size());
  for (const ActiveMesh& am : mc.active)
    mc.partition.push_back(partition_macro_elements(am, bg.h, delta));
  return mc;
}

}  // namespace

MeshComplex build_mesh_complex(const BackgroundMesh& mesh,
                               const InterfaceSet& ifaces, double delta) {
  return build_complex(mesh, ifaces, delta, mesh.x_left, mesh.x_right);
}

MeshComplex build_mesh_complex(const UnfittedBoundaryMesh& mesh,
                               double delta) {
  return build_complex(mesh.bg, InterfaceSet{}, delta, mesh.phys_left,
                       mesh.phys_right);
}

}  // namespace cutdg
