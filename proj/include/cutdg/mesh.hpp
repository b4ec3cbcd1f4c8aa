#pragma once

#include <cstdint>
#include <vector>

namespace cutdg {

/// Uniform background mesh of the computational domain.
struct BackgroundMesh {
  double x_left = 0.0;
  double x_right = 1.0;
  int n_elements = 0;
  double h = 0.0;
  std::vector<double> edges;  // n_elements + 1, strictly increasing

  double edge(int j) const { return edges[j]; }
  double element_left(int j) const { return edges[j]; }
  double element_right(int j) const { return edges[j + 1]; }
};

/// One interior interface: stored exactly as an (element, alpha) pair so the
/// position element_left + alpha*h is reproducible; alpha in (0, 1).
struct Interface {
  int element = 0;
  double alpha = 0.5;
};

struct InterfaceSet {
  std::vector<Interface> interfaces;  // strictly increasing positions
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(interfaces.size()); }
};

/// Physical part K = I_j intersect Omega_i of one active element.
struct CutCell {
  int element = 0;  // background element index
  double a = 0.0;   // physical interval [a, b], 0 < b - a <= h
  double b = 0.0;
  bool cut_left = false;   // a is an interface / physical boundary, not an edge
  bool cut_right = false;

  double length() const { return b - a; }
};

/// Active mesh of one subdomain: contiguous background elements with
/// nonempty intersection, in ascending order.
struct ActiveMesh {
  int subdomain = 0;
  std::vector<CutCell> cells;

  int size() const { return static_cast<int>(cells.size()); }
};

/// A large-intersection element together with its attached small neighbours.
struct MacroElement {
  int first = 0;  // local cell range [first, last] in the active mesh
  int last = 0;
  int owner = 0;  // local index of the large-intersection element
  double im_a = 0.0;  // extent of I_M = union of member intersections
  double im_b = 0.0;
  std::vector<double> weights;  // |K_j| / |I_M| per member, sums to 1

  int members() const { return last - first + 1; }
  double length() const { return im_b - im_a; }
};

struct MacroElementPartition {
  std::vector<MacroElement> macros;    // ascending
  std::vector<int> macro_of_cell;      // local cell -> macro index
};

/// Background mesh + interfaces + per-subdomain active meshes and macro
/// partitions. Immutable after build; safe to share across threads.
struct MeshComplex {
  BackgroundMesh bg;
  InterfaceSet interfaces;
  double delta = 0.2;
  double phys_left = 0.0;   // physical domain; equals mesh ends unless the
  double phys_right = 0.0;  // boundaries are unfitted
  std::vector<ActiveMesh> active;              // one per subdomain
  std::vector<MacroElementPartition> partition;

  int n_subdomains() const { return static_cast<int>(active.size()); }
  double interface_position(int i) const {
    const Interface& g = interfaces.interfaces[i];
    return bg.element_left(g.element) + g.alpha * bg.h;
  }
  /// Subdomain boundary coordinates: [phys_left, Gamma_1, ..., phys_right].
  double subdomain_left(int i) const {
    return i == 0 ? phys_left : interface_position(i - 1);
  }
  double subdomain_right(int i) const {
    return i == n_subdomains() - 1 ? phys_right : interface_position(i);
  }
  /// Index of the subdomain whose closure contains x (ties go left).
  int subdomain_of(double x) const;
};

BackgroundMesh build_background_mesh(double x_left, double x_right, int n);

/// One interface per background element whose left edge lies in
/// [cut_lo, cut_hi), at distance alpha_k*h from that edge with
/// alpha_k = s*alpha_cap, s drawn uniformly from [1e-6, 1] by a seeded
/// deterministic generator. An empty region yields zero interfaces.
InterfaceSet generate_interfaces(const BackgroundMesh& mesh, double cut_lo,
                                 double cut_hi, double alpha_cap,
                                 std::uint64_t seed);

/// Mesh for a physical domain [x_l, x_r] immersed in a larger computational
/// domain, leaving one boundary cut cell of physical size alpha*h at each
/// end. Pitch h = (x_r - x_l) / (n - 1 + 2*alpha), n+1 background elements on
/// [x_l - (1-alpha)h, x_r + (1-alpha)h].
struct UnfittedBoundaryMesh {
  BackgroundMesh bg;
  InterfaceSet boundary_cuts;  // the two boundary positions, for inspection
  double phys_left = 0.0;
  double phys_right = 0.0;
};
UnfittedBoundaryMesh build_unfitted_boundary_mesh(double x_l, double x_r,
                                                  int n, double alpha);

/// Active meshes of the (#interfaces + 1) subdomains of [phys_left,
/// phys_right]. Their intersections tile the physical domain exactly.
std::vector<ActiveMesh> build_active_meshes(const BackgroundMesh& mesh,
                                            const InterfaceSet& ifaces,
                                            double phys_left,
                                            double phys_right);

/// Attaches each small-intersection element to an adjacent large one
/// (leftward preference). Throws NoLargeElement if the subdomain has no
/// element with |K|/|I_j| >= delta.
MacroElementPartition partition_macro_elements(const ActiveMesh& active,
                                               double h, double delta);

/// Full geometry build for a fitted domain.
MeshComplex build_mesh_complex(const BackgroundMesh& mesh,
                               const InterfaceSet& ifaces, double delta);

/// Full geometry build for an unfitted-boundary domain.
MeshComplex build_mesh_complex(const UnfittedBoundaryMesh& mesh, double delta);

}  // namespace cutdg
