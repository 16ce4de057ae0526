#include "doctest.h"

#include <algorithm>
#include <set>

#include "census/cells.hpp"
#include "census/coxeter.hpp"
#include "census/finite_group.hpp"

using namespace census;

TEST_CASE("solid inventory") {
  const auto solids = solid_inventory();
  REQUIRE(solids.size() == 15);
  int spherical = 0, euclidean = 0, hyperbolic = 0, excluded = 0;
  for (const auto& s : solids) {
    spherical += s.geometry == GeometryClass::Spherical;
    euclidean += s.geometry == GeometryClass::Euclidean;
    hyperbolic += s.geometry == GeometryClass::HyperbolicCompact || s.geometry == GeometryClass::HyperbolicNoncompact;
    excluded += !edge_divisibility_filter(s);
  }
  CHECK(spherical == 6);
  CHECK(euclidean == 1);
  CHECK(hyperbolic == 8);
  CHECK(excluded == 4);

  const auto cube = parse_solid("4,3,4:left");
  CHECK(cube.name() == "cube");
  CHECK(cube.geometry == GeometryClass::Euclidean);
  CHECK(edge_divisibility_filter(cube));
  const auto tet = parse_solid("3,3,6:right");
  CHECK(tet.name() == "tetrahedron");
  CHECK(tet.geometry == GeometryClass::HyperbolicNoncompact);
  CHECK_FALSE(tet.compact);
  CHECK(edge_divisibility_filter(tet));
}

TEST_CASE("reversed symbols address the same solid") {
  const auto a = parse_solid("4,3,3:right");
  const auto b = parse_solid("3,3,4:left");
  CHECK(a.oriented == b.oriented);
  CHECK(a.name() == b.name());
}

TEST_CASE("cell counts of the Platonic solids") {
  for (const auto& s : solid_inventory()) {
    const CellIndexing cells(s);
    CAPTURE(s.key());
    CHECK(cells.face_count() == s.faces);
    CHECK(cells.edge_count() == s.edges);
    CHECK(cells.vertex_count() == s.vertices);
    CHECK(s.faces - s.edges + s.vertices == 2);
    CHECK(static_cast<std::size_t>(cells.order()) == s.symmetry_order());
  }
}

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Brute force: an element fixes a point of the sphere iff it fixes a coset of
// some maximal standard parabolic.
bool fixes_a_parabolic_coset(const CoxeterSymbol& sym, const FiniteGroup& g, int e) {
  const Presentation pres = presentation(sym);
  for (int drop = 1; drop <= 4; ++drop) {
    std::vector<Word> gens;
    for (int k = 1; k <= 4; ++k) {
      if (k != drop) gens.push_back({k});
    }
    const CosetTable t = coset_enumeration(pres, gens);
    if (!is_fixed_point_free(t, g.word(e))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("torsion representatives hit every prime-order class") {
  for (const CoxeterSymbol sym : {CoxeterSymbol{3, 3, 3}, CoxeterSymbol{4, 3, 3}, CoxeterSymbol{3, 4, 3},
                                  CoxeterSymbol{3, 3, 5}}) {
    CAPTURE(sym.to_string());
    const FiniteGroup g(presentation(sym));
    const auto& classes = g.conjugacy_classes();
    std::set<int> prime_classes;
    for (int e = 0; e < static_cast<int>(g.order()); ++e) {
      if (is_prime(g.element_order(e))) prime_classes.insert(classes[e]);
    }
    const TorsionSet ts = spherical_fixed_point_annotation(sym, torsion_representatives(sym));
    std::set<int> hit;
    for (const auto& entry : ts.entries) {
      const int e = g.element(entry.word);
      CHECK(g.element_order(e) == entry.order);
      hit.insert(classes[e]);
      REQUIRE(entry.has_fixed_point_on_sphere.has_value());
      CHECK(*entry.has_fixed_point_on_sphere == fixes_a_parabolic_coset(sym, g, e));
      CHECK(*entry.has_fixed_point_on_sphere == has_eigenvalue_one(reflection_matrix(sym, entry.word)));
    }
    CHECK(hit == prime_classes);
  }
}

TEST_CASE("parabolic finiteness") {
  CHECK(parabolic_is_finite({4, 3, 4}, {2, 3, 4}));
  CHECK_FALSE(parabolic_is_finite({4, 3, 4}, {1, 2, 3, 4}));
  CHECK_FALSE(parabolic_is_finite({4, 4, 3}, {1, 2, 3}));
  CHECK(parabolic_is_finite({4, 4, 3}, {2, 3, 4}));
  CHECK(standard_parabolic({3, 3, 5}, {2, 3, 4}).order == 120);
}
