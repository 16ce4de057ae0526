#include "doctest.h"

#include <numeric>
#include <random>

#include "census/coxeter.hpp"
#include "census/errors.hpp"
#include "census/finite_group.hpp"
#include "census/homology.hpp"
#include "census/low_index.hpp"

using namespace census;

namespace {

IntegerMatrix random_matrix(std::mt19937& rng, int rows, int cols) {
  std::uniform_int_distribution<int> entry(-10, 10);
  IntegerMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
  }
  return m;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      for (int k = 0; k < a.cols(); ++k) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return c;
}

// Product of random elementary operations: determinant +-1.
IntegerMatrix random_unimodular(std::mt19937& rng, int n) {
  IntegerMatrix u(n, n);
  for (int i = 0; i < n; ++i) u.at(i, i) = 1;
  std::uniform_int_distribution<int> pick(0, n - 1), factor(-3, 3), kind(0, 2);
  for (int step = 0; step < 3 * n; ++step) {
    const int i = pick(rng), j = pick(rng);
    switch (kind(rng)) {
      case 0:
        if (i != j) {
          const int f = factor(rng);
          for (int c = 0; c < n; ++c) u.at(i, c) += f * u.at(j, c);
        }
        break;
      case 1:
        for (int c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
        break;
      default:
        for (int c = 0; c < n; ++c) u.at(i, c) = -u.at(i, c);
    }
  }
  return u;
}

mpz_class gcd_of_entries(const IntegerMatrix& m) {
  mpz_class g = 0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) g = gcd(g, m.at(i, j));
  }
  return g;
}

}  // namespace

TEST_CASE("Smith normal form is invariant under unimodular changes of basis") {
  std::mt19937 rng(20260315);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    const IntegerMatrix m = random_matrix(rng, rows, cols);
    const SmithForm s = smith_normal_form(m);
    const SmithForm t =
        smith_normal_form(multiply(multiply(random_unimodular(rng, rows), m), random_unimodular(rng, cols)));
    CAPTURE(trial);
    CHECK(s.rank == t.rank);
    CHECK(s.factors == t.factors);
    CHECK(static_cast<int>(s.factors.size()) == s.rank);
    for (std::size_t k = 1; k < s.factors.size(); ++k) CHECK(s.factors[k] % s.factors[k - 1] == 0);
    const mpz_class g = gcd_of_entries(m);
    if (g != 0) {
      REQUIRE_FALSE(s.factors.empty());
      CHECK(s.factors.front() == g);
    } else {
      CHECK(s.rank == 0);
    }
  }
}

TEST_CASE("abelian invariants of small relation matrices") {
  IntegerMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 3;
  CHECK(abelian_invariants(m) == from_cyclic_factors({6}));
  IntegerMatrix z(1, 3);
  z.at(0, 0) = 4;
  z.at(0, 1) = 6;
  CHECK(abelian_invariants(z) == from_cyclic_factors({2}, 2));
}

TEST_CASE("cyclic decompositions normalize to invariant factors") {
  CHECK(from_cyclic_factors({2, 3}) == from_cyclic_factors({6}));
  CHECK(from_cyclic_factors({4, 6}) == from_cyclic_factors({2, 12}));
  CHECK(from_cyclic_factors({1, 0, 5}) == from_cyclic_factors({5}, 1));
  CHECK(from_cyclic_factors({3, 16}).to_string() == "Z48");
  CHECK(from_cyclic_factors({2, 2}, 1).to_string() == "Z2+Z2+Z");
  CHECK(from_cyclic_factors({}, 3).to_string() == "Z^3");
  CHECK(from_cyclic_factors({}).to_string() == "0");
}

TEST_CASE("five-slot H1 notation") {
  CHECK(parse_h1("3(16)000") == from_cyclic_factors({48}));
  CHECK(parse_h1("(29)0000") == from_cyclic_factors({29}));
  CHECK(parse_h1("22001") == from_cyclic_factors({2, 2}, 1));
  CHECK(parse_h1("00003") == from_cyclic_factors({}, 3));
  CHECK(parse_h1("55500") == from_cyclic_factors({5, 5, 5}));
  CHECK(parse_h1("33550") == from_cyclic_factors({3, 3, 5, 5}));
  CHECK(parse_h1("22900") == from_cyclic_factors({2, 18}));
  CHECK(parse_h1("00000").trivial());
  for (const char* s : {"80000", "26000", "2(18)000", "(11)(11)000", "24001", "00002"}) {
    CHECK(format_h1(parse_h1(s)) == s);
  }
  CHECK_THROWS_AS(format_h1(from_cyclic_factors({2, 2, 2, 2, 2})), OverflowSlotError);
  CHECK_THROWS_AS(parse_h1("2200"), InvalidArgument);
}

TEST_CASE("Reidemeister-Schreier at index 1 keeps the group") {
  const Presentation pres = presentation({4, 3, 3});
  const CosetTable trivial = coset_enumeration(pres, {{1}, {2}, {3}, {4}});
  REQUIRE(trivial.size() == 1);
  const Presentation k = rewrite_subgroup_presentation(pres, trivial);
  CHECK(k.generator_count() == pres.generator_count());
  CHECK(k.relators.size() == pres.relators.size());
  CHECK(abelianization(k) == abelianization(pres));
}

TEST_CASE("Reidemeister-Schreier relator and generator counts") {
  const Presentation pres = presentation({3, 3, 3});
  const CosetTable t = coset_enumeration(pres, {{2}, {3}, {4}});
  REQUIRE(t.size() == 5);
  const Presentation k = rewrite_subgroup_presentation(pres, t);
  CHECK(k.relators.size() == static_cast<std::size_t>(t.size()) * pres.relators.size());
  CHECK(k.generator_count() == static_cast<int>(schreier_generators(t, pres).size()));
  const FiniteGroup parabolic(simplify_presentation(k));
  CHECK(parabolic.order() == 24);
}

TEST_CASE("cube subgroups have order 8 by rewriting and by counting") {
  const auto solid = parse_solid("4,3,3:right");
  const Presentation pres = presentation(solid.oriented);
  auto report = low_index_search(pres, solid_constraints(solid));
  REQUIRE(report.accepted.size() == 2);
  const std::size_t by_index = coset_enumeration(pres, {}).size() / solid.symmetry_order();
  CHECK(by_index == 8);
  std::vector<AbelianInvariants> h1;
  for (SubgroupRecord& rec : report.accepted) {
    h1.push_back(h1_of(rec, pres));
    REQUIRE(rec.presentation_of_K);
    CHECK(FiniteGroup(*rec.presentation_of_K).order() == by_index);
  }
  std::sort(h1.begin(), h1.end());
  std::vector<AbelianInvariants> expected{from_cyclic_factors({2, 2}), from_cyclic_factors({8})};
  std::sort(expected.begin(), expected.end());
  CHECK(h1 == expected);
}

TEST_CASE("Tietze simplification preserves the abelianization") {
  for (const char* key : {"3,3,3:left", "4,3,3:right", "3,4,3:left", "4,3,4:left", "4,4,3:left", "4,3,6:right"}) {
    const auto solid = parse_solid(key);
    const Presentation pres = presentation(solid.oriented);
    for (const SubgroupRecord& rec : low_index_search(pres, solid_constraints(solid)).accepted) {
      const Presentation raw = rewrite_subgroup_presentation(pres, rec.table);
      std::vector<int> survivors;
      const Presentation simple = simplify_presentation(raw, 1.5, &survivors);
      CAPTURE(key);
      CHECK(abelianization(simple) == abelianization(raw));
      CHECK(static_cast<int>(survivors.size()) == simple.generator_count());
      CHECK(std::is_sorted(survivors.begin(), survivors.end()));
    }
  }
}
