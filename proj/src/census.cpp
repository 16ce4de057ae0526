#include "census/census.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include "census/errors.hpp"
#include "census/parallel.hpp"

namespace census {

using nlohmann::json;

std::vector<int> SolidCensus::manifold_ids() const {
  std::vector<int> out;
  for (const auto& c : report.classes) out.push_back(c.front());
  std::sort(out.begin(), out.end());
  return out;
}

bool requires_extended(const SolidDescriptor& solid) {
  const CoxeterSymbol& s = solid.oriented;
  return s.p == 5 || s.q == 5 || s.r == 5;
}

std::uint64_t constraint_hash(const SearchConstraints& c) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(c.target_index);
  mix(c.require_orientable);
  mix(c.require_transitive);
  for (const Word& w : c.torsion_words) {
    mix(static_cast<std::int64_t>(w.size()));
    for (Letter l : w) mix(l);
  }
  if (c.transversal) {
    for (char ch : c.transversal->key()) mix(ch);
  }
  return h;
}

std::filesystem::path cache_directory() {
  if (const char* dir = std::getenv("CENSUS_CACHE_DIR"); dir && *dir) return dir;
  return ".census_cache";
}

std::filesystem::path cache_path(const SolidDescriptor& solid, std::uint64_t hash) {
  std::string name = solid.key();
  std::replace(name.begin(), name.end(), ',', '-');
  std::replace(name.begin(), name.end(), ':', '_');
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return cache_directory() / (name + "_" + buf + ".json");
}

namespace {

void check_codes(SolidCensus& c) {
  std::map<std::string, int> seen;
  for (const ManifoldRecord& r : c.records) {
    auto [it, fresh] = seen.emplace(r.code, r.id);
    if (!fresh) {
      c.warnings.push_back("records #" + std::to_string(it->second) + " and #" + std::to_string(r.id) +
                           " share the identification code " + r.code);
    }
  }
}

void finish(SolidCensus& c, const std::vector<SubgroupRecord>& accepted, const DistinguishOptions& options) {
  const CertificationContext ctx(c.solid);
  const Presentation pres = presentation(c.solid.oriented);
  c.records.assign(accepted.size(), {});
  parallel_for(accepted.size(), options.threads, [&](std::size_t k) {
    ManifoldRecord rec = certify(ctx, accepted[k]);
    rec.id = static_cast<int>(k) + 1;
    rec.homology = h1_of(rec.subgroup, pres);
    c.records[k] = std::move(rec);
  });
  c.report = distinguish_report(c.records, options);
  attach_external_flags(c.records);
  check_codes(c);
}

void write_cache(const SolidCensus& c) {
  const auto path = cache_path(c.solid, c.constraint_hash);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  out << to_json(c).dump(1) << '\n';
}

}  // namespace

SolidCensus run_census(const SolidDescriptor& solid, const CensusOptions& options) {
  SearchConstraints constraints = solid_constraints(solid);
  constraints.threads = options.threads;
  constraints.max_nodes = options.max_nodes;
  const std::uint64_t hash = constraint_hash(constraints);
  DistinguishOptions dopt = options.distinguish;
  dopt.threads = options.threads;

  if (options.resume_from_cache) {
    const auto path = cache_path(solid, hash);
    if (std::filesystem::exists(path)) {
      std::ifstream in(path);
      SolidCensus c = census_from_json(json::parse(in), dopt);
      c.from_cache = true;
      return c;
    }
  }

  SolidCensus c;
  c.solid = solid;
  c.constraint_hash = hash;
  const Presentation pres = presentation(solid.oriented);
  const SearchReport report = low_index_search(pres, constraints);
  c.nodes_explored = report.nodes_explored;
  c.search_seconds = report.wall_time.count();
  finish(c, report.accepted, dopt);
  if (options.write_cache) write_cache(c);
  return c;
}

json to_json(const ManifoldRecord& rec) {
  json j;
  j["id"] = rec.id;
  j["solid"] = rec.solid.key();
  j["FI"] = rec.fi;
  j["EI"] = rec.ei;
  j["code"] = rec.code;
  j["cusps"] = rec.cusp_count;
  if (rec.homology) {
    j["H1"] = rec.homology->to_string();
    try {
      j["H1_slots"] = format_h1(*rec.homology);
    } catch (const OverflowSlotError&) {
      j["H1_slots"] = nullptr;
    }
  }
  if (rec.profile) {
    json p;
    p["order_of_K"] = rec.profile->order_of_K ? json(*rec.profile->order_of_K) : json("infinite");
    json counts = json::object();
    for (const auto& [n, v] : rec.profile->low_index_class_counts) counts[std::to_string(n)] = v;
    p["low_index_class_counts"] = counts;
    p["profile_limit"] = rec.profile->profile_limit;
    if (rec.profile->derived_series_quotient) p["derived_quotient"] = rec.profile->derived_series_quotient->to_string();
    j["invariants"] = p;
  }
  j["flags"] = rec.external_flags;
  j["face_partner"] = rec.pairing.partner;
  j["table"] = {{"size", rec.subgroup.table.size()}, {"entries", rec.subgroup.table.entries()}};
  return j;
}

json to_json(const DistinguishReport& report) {
  json j;
  j["classes"] = report.classes;
  j["log"] = report.log;
  j["notes"] = report.notes;
  json pairs = json::array();
  for (const PairVerdict& p : report.pairs) {
    pairs.push_back({{"first", p.first}, {"second", p.second}, {"verdict", to_string(p.verdict)}, {"reason", p.reason}});
  }
  j["pairs"] = pairs;
  return j;
}

json to_json(const SolidCensus& c) {
  json j;
  j["schema_version"] = 1;
  j["solid"] = c.solid.key();
  j["name"] = c.solid.name();
  j["geometry"] = to_string(c.solid.geometry);
  j["constraint_hash"] = c.constraint_hash;
  j["nodes_explored"] = c.nodes_explored;
  j["search_seconds"] = c.search_seconds;
  j["record_count"] = c.records.size();
  j["manifold_count"] = c.report.classes.size();
  j["manifolds"] = c.manifold_ids();
  json recs = json::array();
  for (const ManifoldRecord& r : c.records) recs.push_back(to_json(r));
  j["records"] = recs;
  j["report"] = to_json(c.report);
  j["warnings"] = c.warnings;
  return j;
}

SolidCensus census_from_json(const json& j, const DistinguishOptions& options) {
  SolidCensus c;
  c.solid = parse_solid(j.at("solid").get<std::string>());
  c.constraint_hash = j.at("constraint_hash").get<std::uint64_t>();
  c.nodes_explored = j.value("nodes_explored", std::uint64_t{0});
  c.search_seconds = j.value("search_seconds", 0.0);
  const Presentation pres = presentation(c.solid.oriented);
  std::vector<SubgroupRecord> accepted;
  std::vector<std::string> codes;
  for (const json& r : j.at("records")) {
    const json& t = r.at("table");
    CosetTable table(Alphabet(pres), t.at("size").get<int>(), t.at("entries").get<std::vector<int>>());
    accepted.push_back(make_subgroup_record(pres, std::move(table)));
    codes.push_back(r.value("code", std::string{}));
  }
  finish(c, accepted, options);
  for (std::size_t k = 0; k < c.records.size(); ++k) {
    if (!codes[k].empty() && codes[k] != c.records[k].code) {
      c.warnings.push_back("record #" + std::to_string(k + 1) + " changed identification code on reload");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Fixture

const FixtureSolid* Fixture::find(const std::string& key) const {
  for (const FixtureSolid& s : solids) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open fixture " + path.string());
  const json j = json::parse(in);
  Fixture f;
  f.schema_version = j.at("schema_version").get<int>();
  if (f.schema_version != 1) throw InvalidArgument("unsupported fixture schema " + std::to_string(f.schema_version));
  f.inventory_solids = j.at("inventory").at("solids").get<int>();
  f.inventory_excluded = j.at("inventory").at("edge_divisibility_excluded").get<int>();
  for (const json& s : j.at("solids")) {
    FixtureSolid fs;
    fs.key = s.at("solid").get<std::string>();
    fs.extended = s.value("extended", false);
    fs.expected_manifolds = s.at("expected_manifolds").get<int>();
    if (s.contains("order_of_K")) fs.order_of_K = s["order_of_K"].get<std::uint64_t>();
    for (const json& r : s.at("rows")) {
      FixtureRow row;
      row.n = r.at("n").get<int>();
      row.fi = r.value("fi", std::string{});
      row.ei = r.value("ei", std::string{});
      row.h1 = r.at("h1").get<std::string>();
      if (r.contains("cusps")) row.cusps = r["cusps"].get<int>();
      row.source = r.value("source", std::string{});
      fs.rows.push_back(std::move(row));
    }
    if (s.contains("external_flags")) {
      for (const json& flag : s["external_flags"]) fs.similar_rows.push_back(flag.at("rows").get<std::vector<int>>());
    }
    f.solids.push_back(std::move(fs));
  }
  return f;
}

std::filesystem::path default_fixture_path() {
  if (const char* p = std::getenv("CENSUS_FIXTURE"); p && *p) return p;
#ifdef CENSUS_DATA_DIR
  return std::filesystem::path(CENSUS_DATA_DIR) / "census_fixture.json";
#else
  return "data/census_fixture.json";
#endif
}

namespace {

template <class T>
std::string join(const std::multiset<T>& items) {
  std::string out;
  for (const T& x : items) {
    if (!out.empty()) out += ", ";
    if constexpr (std::is_same_v<T, std::string>) {
      out += x;
    } else {
      out += "(" + std::to_string(x.first) + ", " + x.second + ")";
    }
  }
  return "{" + out + "}";
}

}  // namespace

VerifyResult verify_against_fixture(const SolidCensus& c, const FixtureSolid& expected) {
  VerifyResult v;
  v.key = expected.key;
  auto fail = [&v](std::string msg) {
    v.passed = false;
    v.failures.push_back(std::move(msg));
  };
  const std::vector<int> ids = c.manifold_ids();
  if (static_cast<int>(ids.size()) != expected.expected_manifolds) {
    fail("manifold count " + std::to_string(ids.size()) + ", expected " + std::to_string(expected.expected_manifolds));
  }

  std::multiset<std::string> got_h1, want_h1;
  std::multiset<std::pair<int, std::string>> got_pairs, want_pairs;
  bool with_cusps = !expected.rows.empty() &&
                    std::all_of(expected.rows.begin(), expected.rows.end(), [](const auto& r) { return r.cusps; });
  for (int id : ids) {
    const ManifoldRecord& r = c.record(id);
    got_h1.insert(r.homology->to_string());
    got_pairs.insert({r.cusp_count, r.homology->to_string()});
  }
  for (const FixtureRow& row : expected.rows) {
    const std::string h = parse_h1(row.h1).to_string();
    want_h1.insert(h);
    if (row.cusps) want_pairs.insert({*row.cusps, h});
  }
  if (got_h1 != want_h1) fail("H1 multiset " + join(got_h1) + ", expected " + join(want_h1));
  if (with_cusps && got_pairs != want_pairs) {
    fail("(cusps, H1) multiset " + join(got_pairs) + ", expected " + join(want_pairs));
  }
  if (expected.order_of_K) {
    for (int id : ids) {
      const auto& p = c.record(id).profile;
      if (!p || p->order_of_K != expected.order_of_K) {
        fail("|K| of record #" + std::to_string(id) + " differs from " + std::to_string(*expected.order_of_K));
      }
    }
  }

  std::set<std::string> codes;
  for (const ManifoldRecord& r : c.records) codes.insert(r.code);
  const CellIndexing cells(c.solid);
  for (const FixtureRow& row : expected.rows) {
    if (row.fi.empty()) continue;
    try {
      const std::string code = canonical_identification_code(cells, row.fi, row.ei);
      if (!codes.count(code)) {
        v.warnings.push_back("row " + std::to_string(row.n) + ": FI/EI canonical code matches no record");
      }
    } catch (const InvalidArgument& e) {
      v.warnings.push_back("row " + std::to_string(row.n) + ": FI/EI not readable (" + e.what() + ")");
    }
  }
  for (const std::string& w : c.warnings) v.warnings.push_back(w);
  return v;
}

}  // namespace census
