#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "census/distinguish.hpp"
#include "census/manifold.hpp"

namespace census {

struct CensusOptions {
  int threads = 1;
  std::uint64_t max_nodes = 0;  // search budget, 0 = unlimited
  bool resume_from_cache = false;
  bool write_cache = true;
  DistinguishOptions distinguish;
};

/// Everything computed for one solid. Records are the Gamma-conjugacy classes
/// found by the search (ids 1..n); manifolds are the classes of the
/// distinguish report.
struct SolidCensus {
  SolidDescriptor solid;
  std::uint64_t constraint_hash = 0;
  std::vector<ManifoldRecord> records;
  DistinguishReport report;
  std::uint64_t nodes_explored = 0;
  double search_seconds = 0.0;
  bool from_cache = false;
  std::vector<std::string> warnings;

  /// Least record id of each manifold class.
  std::vector<int> manifold_ids() const;
  const ManifoldRecord& record(int id) const { return records.at(static_cast<std::size_t>(id - 1)); }
};

/// Solids whose census belongs to the long-running suite.
bool requires_extended(const SolidDescriptor& solid);

/// FNV-1a over the search constraints of the solid.
std::uint64_t constraint_hash(const SearchConstraints& c);

/// CENSUS_CACHE_DIR, else ".census_cache".
std::filesystem::path cache_directory();
std::filesystem::path cache_path(const SolidDescriptor& solid, std::uint64_t hash);

/// search -> certify -> homology -> cusps -> distinguish. Throws
/// BudgetExceeded or CertificationFailure.
SolidCensus run_census(const SolidDescriptor& solid, const CensusOptions& options = {});

nlohmann::json to_json(const ManifoldRecord& rec);
nlohmann::json to_json(const DistinguishReport& report);
nlohmann::json to_json(const SolidCensus& census);

/// Rebuilds the subgroup records from their tables and recertifies them;
/// homology and the report are recomputed.
SolidCensus census_from_json(const nlohmann::json& j, const DistinguishOptions& options = {});

// ---------------------------------------------------------------------------
// Fixture comparison

struct FixtureRow {
  int n = 0;
  std::string fi;
  std::string ei;
  std::string h1;
  std::optional<int> cusps;
  std::string source;
};

struct FixtureSolid {
  std::string key;
  bool extended = false;
  int expected_manifolds = 0;
  std::optional<std::uint64_t> order_of_K;
  std::vector<FixtureRow> rows;
  std::vector<std::vector<int>> similar_rows;  // pairs flagged as the same manifold
};

struct Fixture {
  int schema_version = 0;
  int inventory_solids = 0;
  int inventory_excluded = 0;
  std::vector<FixtureSolid> solids;

  const FixtureSolid* find(const std::string& key) const;
};

Fixture load_fixture(const std::filesystem::path& path);
std::filesystem::path default_fixture_path();

struct VerifyResult {
  std::string key;
  bool passed = true;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

/// Counts, H1 multiset (up to isomorphism), (cusps, H1) multiset and |K|
/// are failures; FI/EI canonical-code mismatches are warnings.
VerifyResult verify_against_fixture(const SolidCensus& census, const FixtureSolid& expected);

}  // namespace census
