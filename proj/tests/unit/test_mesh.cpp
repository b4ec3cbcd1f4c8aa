#include <doctest.h>

#include <cmath>

#include "cutdg/exceptions.hpp"
#include "cutdg/mesh.hpp"

using namespace cutdg;

TEST_CASE("background mesh construction") {
  const BackgroundMesh m = build_background_mesh(0.0, 2.0, 20);
  CHECK(m.h == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(m.edges.front() == 0.0);
  CHECK(m.edges.back() == 2.0);
  for (int j = 0; j < 20; ++j)
    CHECK(m.edges[j + 1] - m.edges[j] == doctest::Approx(0.1).epsilon(1e-14));

  CHECK(build_background_mesh(0.0, 1.0, 4).h == doctest::Approx(0.25));
  CHECK(build_background_mesh(-2.0, 2.0, 200).h ==
        doctest::Approx(4.0 / 200).epsilon(1e-15));

  CHECK_THROWS_AS(build_background_mesh(0.0, 1.0, 3), ConfigError);
  CHECK_THROWS_AS(build_background_mesh(1.0, 1.0, 10), ConfigError);
}

TEST_CASE("interface generation matches the element-selection rule") {
  const BackgroundMesh m = build_background_mesh(0.0, 2.0, 20);
  const InterfaceSet s = generate_interfaces(m, 0.75, 1.25, 0.1, 7);
  // elements 8..12 have their left edge in [0.75, 1.25)
  REQUIRE(s.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(s.interfaces[k].element == 8 + k);
    CHECK(s.interfaces[k].alpha > 1e-7);
    CHECK(s.interfaces[k].alpha <= 0.1);
  }
  // determinism
  const InterfaceSet s2 = generate_interfaces(m, 0.75, 1.25, 0.1, 7);
  for (int k = 0; k < 5; ++k)
    CHECK(s.interfaces[k].alpha == s2.interfaces[k].alpha);

  // empty region: zero interfaces, single subdomain
  const InterfaceSet none = generate_interfaces(m, 0.5, 0.5, 0.1, 7);
  CHECK(none.size() == 0);

  // a quarter of the elements for the larger meshes too
  for (int n : {40, 80, 160}) {
    const BackgroundMesh mn = build_background_mesh(0.0, 2.0, n);
    CHECK(generate_interfaces(mn, 0.75, 1.25, 0.1, 3).size() == n / 4);
  }
}

TEST_CASE("alpha_k = s * alpha_cap") {
  // direct evaluation of the cut-fraction law
  CHECK(0.37 * 0.01 == doctest::Approx(0.0037));
}

TEST_CASE("active meshes tile the domain") {
  const BackgroundMesh m = build_background_mesh(0.0, 2.0, 20);
  const InterfaceSet s = generate_interfaces(m, 0.75, 1.25, 0.1, 11);
  const auto active = build_active_meshes(m, s, 0.0, 2.0);
  REQUIRE(active.size() == 6);  // 5 interfaces -> 6 subdomains
  double total = 0.0;
  for (const ActiveMesh& am : active)
    for (const CutCell& c : am.cells) total += c.length();
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));

  // no interfaces: one active mesh equal to the background mesh
  const auto single = build_active_meshes(m, InterfaceSet{}, 0.0, 2.0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].size() == 20);
  for (const CutCell& c : single[0].cells) {
    CHECK(!c.cut_left);
    CHECK(!c.cut_right);
  }

  // one interface: the cut element appears on both sides with complementary
  // intersections
  InterfaceSet one;
  one.interfaces.push_back({10, 0.3});
  const auto two = build_active_meshes(m, one, 0.0, 2.0);
  REQUIRE(two.size() == 2);
  const CutCell& left_piece = two[0].cells.back();
  const CutCell& right_piece = two[1].cells.front();
  CHECK(left_piece.element == 10);
  CHECK(right_piece.element == 10);
  CHECK(left_piece.length() == doctest::Approx(0.3 * m.h).epsilon(1e-13));
  CHECK(right_piece.length() == doctest::Approx(0.7 * m.h).epsilon(1e-13));
}

TEST_CASE("macro-element partition") {
  const BackgroundMesh m = build_background_mesh(0.0, 2.0, 20);

  SUBCASE("uncut mesh gives singletons with empty stabilized edge sets") {
    const auto active = build_active_meshes(m, InterfaceSet{}, 0.0, 2.0);
    const MacroElementPartition part =
        partition_macro_elements(active[0], m.h, 0.2);
    CHECK(part.macros.size() == 20);
    for (const MacroElement& me : part.macros) {
      CHECK(me.members() == 1);
      CHECK(me.weights[0] == doctest::Approx(1.0));
    }
  }

  SUBCASE("small left piece merges with its left neighbour") {
    InterfaceSet one;
    one.interfaces.push_back({10, 0.0037});
    const auto active = build_active_meshes(m, one, 0.0, 2.0);
    const MacroElementPartition part =
        partition_macro_elements(active[0], m.h, 0.2);
    // subdomain 0 has 11 cells; the last is small
    CHECK(part.macros.size() == 10);
    const MacroElement& last = part.macros.back();
    CHECK(last.members() == 2);
    CHECK(last.owner == last.first);  // owner is the large left neighbour
    // weights from the generated geometry
    const double im = last.length();
    CHECK(im == doctest::Approx(m.h + 0.0037 * m.h).epsilon(1e-12));
    CHECK(last.weights[0] == doctest::Approx(1.0 / 1.0037).epsilon(1e-10));
    CHECK(last.weights[1] ==
          doctest::Approx(0.0037 / 1.0037).epsilon(1e-10));
    CHECK(last.weights[0] + last.weights[1] == doctest::Approx(1.0));
  }

  SUBCASE("half cut gives two singleton macro-elements") {
    InterfaceSet one;
    one.interfaces.push_back({10, 0.5});
    const auto active = build_active_meshes(m, one, 0.0, 2.0);
    for (const ActiveMesh& am : active) {
      const MacroElementPartition part =
          partition_macro_elements(am, m.h, 0.2);
      for (const MacroElement& me : part.macros) CHECK(me.members() == 1);
    }
  }

  SUBCASE("no large element fails") {
    // single-cell subdomain with a small intersection
    ActiveMesh am;
    am.subdomain = 0;
    am.cells.push_back({0, 0.0, 0.01 * m.h, false, true});
    CHECK_THROWS_AS(partition_macro_elements(am, m.h, 0.2), NoLargeElement);
  }
}

TEST_CASE("unfitted boundary mesh") {
  SUBCASE("boundary cut cells of width alpha*h") {
    const UnfittedBoundaryMesh um =
        build_unfitted_boundary_mesh(0.0, 1.0, 100, 0.01);
    const MeshComplex mc = build_mesh_complex(um, 0.2);
    REQUIRE(mc.n_subdomains() == 1);
    const ActiveMesh& am = mc.active[0];
    CHECK(am.cells.front().length() ==
          doctest::Approx(0.01 * um.bg.h).epsilon(1e-10));
    CHECK(am.cells.back().length() ==
          doctest::Approx(0.01 * um.bg.h).epsilon(1e-10));
    double total = 0.0;
    for (const CutCell& c : am.cells) total += c.length();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("alpha = 1 collapses to the fitted mesh") {
    const UnfittedBoundaryMesh um =
        build_unfitted_boundary_mesh(0.0, 1.0, 100, 1.0);
    CHECK(um.bg.x_left == doctest::Approx(0.0));
    CHECK(um.bg.x_right == doctest::Approx(1.0));
    CHECK(um.boundary_cuts.size() == 0);
    const MeshComplex mc = build_mesh_complex(um, 0.2);
    for (const CutCell& c : mc.active[0].cells) {
      CHECK(!c.cut_left);
      CHECK(!c.cut_right);
    }
  }

  SUBCASE("alpha = 0.5 places x_L at -h/2") {
    const UnfittedBoundaryMesh um =
        build_unfitted_boundary_mesh(0.0, 1.0, 100, 0.5);
    CHECK(um.bg.h == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(um.bg.x_left == doctest::Approx(-0.5 * um.bg.h).epsilon(1e-12));
  }
}

TEST_CASE("mesh complex geometry invariants over many seeds") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const BackgroundMesh m = build_background_mesh(-2.0, 2.0, 24);
    const InterfaceSet s = generate_interfaces(m, -0.5, 0.5, 0.1, seed);
    const MeshComplex mc = build_mesh_complex(m, s, 0.2);
    double total = 0.0;
    for (const ActiveMesh& am : mc.active)
      for (const CutCell& c : am.cells) total += c.length();
    CHECK(std::abs(total - 4.0) < 1e-13 * 4.0);
    for (int i = 0; i < mc.n_subdomains(); ++i)
      for (const MacroElement& me : mc.partition[i].macros) {
        CHECK(me.length() >= 0.2 * m.h * (1.0 - 1e-12));
        CHECK(me.members() <= 3);
      }
  }
}
