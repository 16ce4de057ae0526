#include "doctest.h"

#include "census/coset_table.hpp"
#include "census/coxeter.hpp"
#include "census/errors.hpp"
#include "census/finite_group.hpp"

using namespace census;

TEST_CASE("spherical Coxeter group orders") {
  CHECK(coset_enumeration(presentation({3, 3, 3}), {}).size() == 120);
  CHECK(coset_enumeration(presentation({4, 3, 3}), {}).size() == 384);
  CHECK(coset_enumeration(presentation({3, 4, 3}), {}).size() == 1152);
  CHECK(coset_enumeration(presentation({3, 3, 5}), {}).size() == 14400);
}

TEST_CASE("index of a maximal parabolic") {
  CHECK(coset_enumeration(presentation({3, 3, 5}), {{2}, {3}, {4}}).size() == 120);
  CHECK(coset_enumeration(presentation({4, 3, 3}), {{1}, {2}, {3}}).size() == 8);
}

TEST_CASE("infinite group exhausts budget") {
  CHECK_THROWS_AS(coset_enumeration(presentation({4, 3, 4}), {{2}, {3}, {4}}, 100'000), BudgetExceeded);
}
