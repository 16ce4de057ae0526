#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>

#include "census/census.hpp"
#include "census/errors.hpp"
#include "census/isometry.hpp"

using namespace census;

namespace {

CensusOptions no_cache() {
  CensusOptions o;
  o.write_cache = false;
  return o;
}

nlohmann::json canonical(const SolidCensus& c) {
  nlohmann::json j = to_json(c);
  j.erase("search_seconds");
  return j;
}

std::multiset<std::string> h1_multiset(const SolidCensus& c) {
  std::multiset<std::string> out;
  for (int id : c.manifold_ids()) out.insert(c.record(id).homology->to_string());
  return out;
}

std::multiset<std::string> expected_h1(std::initializer_list<const char*> slots) {
  std::multiset<std::string> out;
  for (const char* s : slots) out.insert(parse_h1(s).to_string());
  return out;
}

}  // namespace

TEST_CASE("quick census values") {
  const auto c333 = run_census(parse_solid("3,3,3:left"), no_cache());
  CHECK(h1_multiset(c333) == expected_h1({"50000"}));
  const auto c433 = run_census(parse_solid("4,3,3:right"), no_cache());
  CHECK(h1_multiset(c433) == expected_h1({"80000", "22000"}));
  const auto c343 = run_census(parse_solid("3,4,3:left"), no_cache());
  CHECK(h1_multiset(c343) == expected_h1({"26000", "80000", "30000"}));
  for (const auto& r : c343.records) CHECK(r.profile->order_of_K == 24u);

  const auto c434 = run_census(parse_solid("4,3,4:left"), no_cache());
  CHECK(c434.manifold_ids().size() == 6);
  CHECK(h1_multiset(c434) == expected_h1({"30001", "22001", "44000", "00003", "20001", "22001"}));
  std::size_t flagged = 0;
  for (const auto& r : c434.records) flagged += !r.external_flags.empty();
  CHECK(flagged == 2);

  const auto c443 = run_census(parse_solid("4,4,3:left"), no_cache());
  REQUIRE(c443.records.size() == 2);
  std::multiset<std::uint64_t> index3;
  for (const auto& r : c443.records) {
    CHECK(r.cusp_count == 2);
    CHECK(r.homology->to_string() == "Z^2");
    index3.insert(r.profile->low_index_class_counts.at(3));
  }
  CHECK(index3 == std::multiset<std::uint64_t>{5, 6});
  CHECK(c443.report.classes.size() == 2);
  CHECK(c443.report.pairs.size() == 1);
  CHECK(c443.report.pairs.front().verdict == Verdict::Distinct);

  CHECK(run_census(parse_solid("3,3,6:right"), no_cache()).records.empty());
}

TEST_CASE("census output does not depend on the thread count") {
  CensusOptions one = no_cache();
  CensusOptions many = no_cache();
  many.threads = 8;
  for (const char* key : {"4,4,3:left", "4,3,6:right", "4,3,4:left"}) {
    CAPTURE(key);
    const auto a = run_census(parse_solid(key), one);
    const auto b = run_census(parse_solid(key), many);
    CHECK(canonical(a).dump() == canonical(b).dump());
  }
}

TEST_CASE("low-index profiles are conjugation invariant") {
  const auto solid = parse_solid("4,3,6:right");
  const Presentation pres = presentation(solid.oriented);
  for (SubgroupRecord rec : low_index_search(pres, solid_constraints(solid)).accepted) {
    const AbelianInvariants h = h1_of(rec, pres);
    const auto profile = low_index_profile(*rec.presentation_of_K, 4);
    for (int point : {1, rec.table.size() / 2, rec.table.size() - 1}) {
      SubgroupRecord conj = make_subgroup_record(pres, rec.table.rebased(point));
      CHECK(h1_of(conj, pres) == h);
      CHECK(low_index_profile(*conj.presentation_of_K, 4) == profile);
    }
  }
}

TEST_CASE("derived quotients of the cube groups") {
  const auto solid = parse_solid("4,3,3:right");
  const Presentation pres = presentation(solid.oriented);
  std::set<std::string> seen;
  for (SubgroupRecord rec : low_index_search(pres, solid_constraints(solid)).accepted) {
    const AbelianInvariants h = h1_of(rec, pres);
    const auto d = derived_quotient(*rec.presentation_of_K);
    REQUIRE(d);
    // K is Z8 or the quaternion group.
    seen.insert(h.to_string() + ":" + d->to_string());
  }
  CHECK(seen == std::set<std::string>{"Z8:0", "Z2+Z2:Z2"});
  const auto z = run_census(parse_solid("4,4,3:left"), no_cache());
  CHECK_FALSE(derived_quotient(*z.records.front().subgroup.presentation_of_K));
}

TEST_CASE("isomorphism certificates") {
  const auto solid = parse_solid("5,3,5:left");
  const Presentation pres = presentation(solid.oriented);
  auto accepted = low_index_search(pres, solid_constraints(solid)).accepted;
  REQUIRE(accepted.size() == 12);
  std::vector<AbelianInvariants> h1;
  for (auto& r : accepted) h1.push_back(h1_of(r, pres));

  const ExactReflectionRep exact(solid.oriented);
  auto check_certificate = [&](int a, int b) {
    const auto cert = certify_isomorphism(solid.oriented, accepted[a], accepted[b]);
    REQUIRE(cert);
    CHECK(verify_epimorphism(exact, subgroup_generators(pres, accepted[a]), cert->forward, accepted[b].table));
    CHECK(verify_epimorphism(exact, subgroup_generators(pres, accepted[b]), cert->backward, accepted[a].table));
    CHECK(h1[a] == h1[b]);
  };
  SUBCASE("diagram flip") { check_certificate(2, 3); }
  SUBCASE("trace search") { check_certificate(10, 11); }
  SUBCASE("negative controls") {
    CHECK_FALSE(certify_isomorphism(solid.oriented, accepted[0], accepted[1]));
    const auto sg = subgroup_generators(pres, accepted[0]);
    Epimorphism bogus{std::vector<Word>(sg.generators.size(), Word{1, 2})};
    CHECK_FALSE(verify_epimorphism(exact, sg, bogus, accepted[0].table));
  }
  CHECK_THROWS_AS(ExactReflectionRep({5, 3, 6}), InvalidArgument);
}

TEST_CASE("cache round trip recertifies to identical codes") {
  const auto dir = std::filesystem::temp_directory_path() / "census_cache_test";
  std::filesystem::remove_all(dir);
  setenv("CENSUS_CACHE_DIR", dir.c_str(), 1);
  CensusOptions o;
  const auto first = run_census(parse_solid("4,3,6:right"), o);
  CHECK_FALSE(first.from_cache);
  const auto path = cache_path(first.solid, first.constraint_hash);
  CHECK(std::filesystem::exists(path));

  o.resume_from_cache = true;
  const auto second = run_census(parse_solid("4,3,6:right"), o);
  CHECK(second.from_cache);
  REQUIRE(second.records.size() == first.records.size());
  for (std::size_t k = 0; k < first.records.size(); ++k) {
    CHECK(second.records[k].code == first.records[k].code);
    CHECK(second.records[k].homology == first.records[k].homology);
    CHECK(second.records[k].cusp_count == first.records[k].cusp_count);
  }
  CHECK(second.report.classes == first.report.classes);
  CHECK(second.warnings.empty());

  const auto reread = census_from_json(to_json(first));
  CHECK(canonical(reread).dump() == canonical(first).dump());

  auto other = solid_constraints(first.solid);
  other.require_orientable = false;
  CHECK(constraint_hash(other) != first.constraint_hash);
  unsetenv("CENSUS_CACHE_DIR");
  std::filesystem::remove_all(dir);
}

TEST_CASE("budget exhaustion surfaces") {
  CensusOptions o = no_cache();
  o.max_nodes = 3;
  CHECK_THROWS_AS(run_census(parse_solid("4,3,6:right"), o), BudgetExceeded);
}

TEST_CASE("fixture verification") {
  const Fixture fixture = load_fixture(default_fixture_path());
  CHECK(fixture.schema_version == 1);
  CHECK(fixture.inventory_solids == 15);
  CHECK(fixture.inventory_excluded == 4);
  const FixtureSolid* f443 = fixture.find("4,4,3:left");
  REQUIRE(f443);
  const auto c443 = run_census(parse_solid("4,4,3:left"), no_cache());

  const VerifyResult ok = verify_against_fixture(c443, *f443);
  CHECK(ok.passed);
  CHECK(ok.failures.empty());

  FixtureSolid count = *f443;
  count.expected_manifolds = 3;
  const VerifyResult bad_count = verify_against_fixture(c443, count);
  CHECK_FALSE(bad_count.passed);
  REQUIRE_FALSE(bad_count.failures.empty());
  CHECK(bad_count.failures.front().find("manifold count 2, expected 3") != std::string::npos);

  FixtureSolid homology = *f443;
  homology.rows.front().h1 = "20002";
  CHECK_FALSE(verify_against_fixture(c443, homology).passed);

  FixtureSolid cusps = *f443;
  cusps.rows.front().cusps = 1;
  CHECK_FALSE(verify_against_fixture(c443, cusps).passed);

  FixtureSolid labels = *f443;
  labels.rows.front().fi = "zzzz";
  const VerifyResult relabel = verify_against_fixture(c443, labels);
  CHECK(relabel.passed);
  CHECK_FALSE(relabel.warnings.empty());

  const FixtureSolid* f433 = fixture.find("4,3,3:right");
  REQUIRE(f433);
  FixtureSolid order = *f433;
  order.order_of_K = 9;
  CHECK_FALSE(verify_against_fixture(run_census(parse_solid("4,3,3:right"), no_cache()), order).passed);
}
