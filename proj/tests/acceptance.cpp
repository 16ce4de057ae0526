// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "census/census.hpp"
#include "census/errors.hpp"
#include "census/finite_group.hpp"

using namespace census;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

CensusOptions fresh(int threads = 1) {
  CensusOptions o;
  o.write_cache = false;
  o.threads = threads;
  return o;
}

std::multiset<std::string> manifold_h1(const SolidCensus& c) {
  std::multiset<std::string> out;
  for (int id : c.manifold_ids()) out.insert(c.record(id).homology->to_string());
  return out;
}

std::multiset<std::string> h1_of_slots(const std::vector<std::string>& slots) {
  std::multiset<std::string> out;
  for (const auto& s : slots) out.insert(parse_h1(s).to_string());
  return out;
}

std::string show(const std::multiset<std::string>& m) {
  std::string out;
  for (const auto& s : m) out += (out.empty() ? "" : ", ") + s;
  return "{" + out + "}";
}

const Fixture& fixture() {
  static const Fixture f = load_fixture(default_fixture_path());
  return f;
}

std::multiset<std::pair<int, std::string>> cusp_h1(const SolidCensus& c) {
  std::multiset<std::pair<int, std::string>> out;
  for (int id : c.manifold_ids()) out.insert({c.record(id).cusp_count, c.record(id).homology->to_string()});
  return out;
}

std::multiset<std::pair<int, std::string>> fixture_cusp_h1(const FixtureSolid& f) {
  std::multiset<std::pair<int, std::string>> out;
  for (const auto& r : f.rows) out.insert({r.cusps.value_or(0), parse_h1(r.h1).to_string()});
  return out;
}

std::vector<std::string> fixture_h1(const std::string& key) {
  std::vector<std::string> out;
  for (const auto& r : fixture().find(key)->rows) out.push_back(r.h1);
  return out;
}

// 1 ---------------------------------------------------------------------------
Outcome inventory() {
  Outcome o;
  const auto solids = solid_inventory();
  std::map<std::string, int> by;
  int excluded = 0;
  for (const auto& s : solids) {
    const bool hyp = s.geometry == GeometryClass::HyperbolicCompact || s.geometry == GeometryClass::HyperbolicNoncompact;
    ++by[hyp ? "hyperbolic" : to_string(s.geometry)];
    excluded += !edge_divisibility_filter(s);
  }
  o.require(solids.size() == 15, "solids " + std::to_string(solids.size()));
  o.require(by["spherical"] == 6 && by["euclidean"] == 1 && by["hyperbolic"] == 8, "geometry split");
  o.require(excluded == 4, "excluded " + std::to_string(excluded));
  o.detail = o.passed ? "15 solids (6/1/8), 4 excluded by edge divisibility" : o.detail;
  return o;
}

// 2 ---------------------------------------------------------------------------
Outcome spherical() {
  Outcome o;
  struct Case {
    const char* key;
    std::vector<std::string> h1;
    std::uint64_t order;
  };
  const Case cases[] = {{"3,3,3:left", {"50000"}, 5},
                        {"4,3,3:right", {"80000", "22000"}, 8},
                        {"3,4,3:left", {"26000", "80000", "30000"}, 24}};
  std::ostringstream out;
  for (const Case& c : cases) {
    const SolidCensus census = run_census(parse_solid(c.key), fresh());
    const auto got = manifold_h1(census);
    o.require(got == h1_of_slots(c.h1), std::string(c.key) + " H1 " + show(got));
    for (int id : census.manifold_ids()) {
      const auto& rec = census.record(id);
      o.require(rec.profile && rec.profile->order_of_K == c.order, std::string(c.key) + " |K| by index");
      const FiniteGroup k(*rec.subgroup.presentation_of_K);
      o.require(k.order() == c.order, std::string(c.key) + " |K| by enumeration " + std::to_string(k.order()));
    }
    out << c.key << " " << census.manifold_ids().size() << " " << show(got) << " |K|=" << c.order << "; ";
  }
  if (o.passed) o.detail = out.str();
  return o;
}

// 3 ---------------------------------------------------------------------------
Outcome euclidean() {
  Outcome o;
  const SolidCensus c = run_census(parse_solid("4,3,4:left"), fresh());
  const auto got = manifold_h1(c);
  o.require(c.manifold_ids().size() == 6, "records " + std::to_string(c.manifold_ids().size()));
  o.require(got == h1_of_slots({"30001", "22001", "44000", "00003", "20001", "22001"}), "H1 " + show(got));
  o.require(got.count("Z^3") == 1, "3-torus");
  int flagged = 0;
  for (const auto& r : c.records) {
    if (!r.external_flags.empty()) {
      ++flagged;
      o.require(r.homology->to_string() == "Z2+Z2+Z", "flag on " + r.homology->to_string());
    }
  }
  o.require(flagged == 2, "similarity flags " + std::to_string(flagged));
  if (o.passed) o.detail = "6 records " + show(got) + ", similarity flag on the two Z2+Z2+Z records";
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome hyperbolic_quick() {
  Outcome o;
  const SolidCensus oct = run_census(parse_solid("4,4,3:left"), fresh());
  std::multiset<std::uint64_t> index3;
  o.require(oct.records.size() == 2 && oct.manifold_ids().size() == 2, "4,4,3 count");
  for (const auto& r : oct.records) {
    o.require(r.cusp_count == 2 && r.homology->to_string() == "Z^2", "4,4,3 record");
    if (r.profile && r.profile->low_index_class_counts.count(3)) index3.insert(r.profile->low_index_class_counts.at(3));
  }
  o.require(index3 == std::multiset<std::uint64_t>{5, 6}, "index-3 counts");

  const SolidCensus cube = run_census(parse_solid("4,3,6:right"), fresh());
  const std::multiset<std::pair<int, std::string>> want{
      {2, parse_h1("20002").to_string()}, {1, parse_h1("24001").to_string()}, {2, parse_h1("20002").to_string()}};
  o.require(cube.manifold_ids().size() == 3, "4,3,6 count");
  o.require(cusp_h1(cube) == want, "4,3,6 (C,H1)");

  const SolidCensus tet = run_census(parse_solid("3,3,6:right"), fresh());
  o.require(tet.records.empty(), "3,3,6 not empty");
  if (o.passed) {
    o.detail = "4,4,3: 2 records C=2 H1=Z^2, index-3 classes {5,6}; 4,3,6: (2,Z2+Z^2) (1,Z2+Z4+Z) (2,Z2+Z^2); 3,3,6: 0";
  }
  return o;
}

// 5 ---------------------------------------------------------------------------
Outcome certification() {
  Outcome o;
  int certified = 0, failures = 0;
  for (const char* key : {"3,3,3:left", "4,3,3:right", "3,4,3:left", "4,3,4:left", "4,4,3:left", "4,3,6:right",
                          "3,3,6:right"}) {
    const auto solid = parse_solid(key);
    const CertificationContext ctx(solid);
    for (const SubgroupRecord& r : low_index_search(ctx.presentation(), solid_constraints(solid)).accepted) {
      try {
        const ManifoldRecord m = certify(ctx, r);
        bool involution = true;
        for (int s = 0; s < solid.faces; ++s) {
          involution = involution && m.pairing.partner[m.pairing.partner[s]] == s && m.pairing.partner[s] != s;
        }
        bool cycles = static_cast<int>(m.cycles.size()) * solid.dihedral_denominator == solid.edges;
        for (const auto& c : m.cycles) cycles = cycles && static_cast<int>(c.edges.size()) == solid.dihedral_denominator;
        o.require(involution && cycles && verify_transversal(ctx.cells(), r), std::string(key) + " record structure");
        ++certified;
      } catch (const CertificationFailure& e) {
        ++failures;
        o.require(false, std::string(key) + ": " + e.what());
      }
    }
  }
  if (o.passed) o.detail = std::to_string(certified) + " records certified, " + std::to_string(failures) + " failures";
  return o;
}

// 6 ---------------------------------------------------------------------------
Outcome dodecahedral_sphere() {
  Outcome o;
  const SolidCensus c = run_census(parse_solid("3,3,5:left"), fresh(4));
  const auto got = manifold_h1(c);
  o.require(c.manifold_ids().size() == 2, "count " + std::to_string(c.manifold_ids().size()));
  o.require(got == h1_of_slots({"00000", "(15)0000"}), "H1 " + show(got));
  if (o.passed) o.detail = "2 records " + show(got) + " (trivial H1: Poincare sphere)";
  return o;
}

// 7 ---------------------------------------------------------------------------
Outcome dodecahedron_536() {
  Outcome o;
  const SolidCensus c = run_census(parse_solid("5,3,6:right"), fresh(4));
  const FixtureSolid& f = *fixture().find("5,3,6:right");
  o.require(c.manifold_ids().size() == 10, "count " + std::to_string(c.manifold_ids().size()));
  o.require(cusp_h1(c) == fixture_cusp_h1(f), "(C,H1) multiset");
  int distinct = 0, justified = 0;
  for (const auto& p : c.report.pairs) {
    if (p.verdict == Verdict::Distinct) {
      ++distinct;
    } else if (p.verdict == Verdict::NotDistinguished && p.reason.find("external fact") != std::string::npos) {
      ++justified;
    } else {
      o.require(false, "pair #" + std::to_string(p.first) + "/#" + std::to_string(p.second) + " " + p.reason);
    }
  }
  o.require(distinct + justified == 45, "pairs " + std::to_string(distinct + justified));
  if (o.passed) {
    o.detail = "10 records, (C,H1) multiset matches; " + std::to_string(distinct) + " pairs distinguished, " +
               std::to_string(justified) + " by the commensurator note";
  }
  return o;
}

// 8 ---------------------------------------------------------------------------
Outcome compact_hyperbolic() {
  Outcome o;
  std::ostringstream out;
  for (const auto& [key, count] : {std::pair{"5,3,5:left", 8}, std::pair{"3,5,3:left", 6}}) {
    const SolidCensus c = run_census(parse_solid(key), fresh(4));
    const auto got = manifold_h1(c);
    o.require(static_cast<int>(c.manifold_ids().size()) == count,
              std::string(key) + " count " + std::to_string(c.manifold_ids().size()));
    o.require(got == h1_of_slots(fixture_h1(key)), std::string(key) + " H1 " + show(got));
    out << key << ": " << c.records.size() << " classes -> " << c.manifold_ids().size() << " manifolds "
        << show(got) << "; ";
  }
  if (o.passed) o.detail = out.str();
  return o;
}

// 9 ---------------------------------------------------------------------------
IntegerMatrix product(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      for (int k = 0; k < a.cols(); ++k) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return c;
}

IntegerMatrix unimodular(std::mt19937& rng, int n) {
  IntegerMatrix u(n, n);
  for (int i = 0; i < n; ++i) u.at(i, i) = 1;
  std::uniform_int_distribution<int> pick(0, n - 1), f(-2, 2);
  for (int step = 0; step < 4 * n; ++step) {
    const int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int k = f(rng);
    for (int c = 0; c < n; ++c) u.at(i, c) += k * u.at(j, c);
    if (step % 3 == 0) {
      for (int c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
    }
  }
  return u;
}

Outcome smith_oracle() {
  Outcome o;
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> dim(1, 8), entry(-10, 10);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const int r = dim(rng), c = dim(rng);
    IntegerMatrix m(r, c);
    mpz_class g = 0;
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) {
        m.at(i, j) = entry(rng);
        g = gcd(g, m.at(i, j));
      }
    }
    const SmithForm a = smith_normal_form(m);
    const SmithForm b = smith_normal_form(product(product(unimodular(rng, r), m), unimodular(rng, c)));
    o.require(a.factors == b.factors && a.rank == b.rank, "matrix " + std::to_string(t) + " not invariant");
    o.require(g == 0 ? a.rank == 0 : (!a.factors.empty() && a.factors.front() == g),
              "matrix " + std::to_string(t) + " d1 != gcd");
    ++checked;
  }
  if (o.passed) o.detail = std::to_string(checked) + " random matrices invariant, d1 = gcd";
  return o;
}

// 10 --------------------------------------------------------------------------
Outcome torsion_oracle() {
  Outcome o;
  std::ostringstream out;
  for (const CoxeterSymbol sym : {CoxeterSymbol{3, 3, 3}, CoxeterSymbol{4, 3, 3}, CoxeterSymbol{3, 4, 3},
                                  CoxeterSymbol{3, 3, 5}}) {
    const FiniteGroup g(presentation(sym));
    const auto& cls = g.conjugacy_classes();
    std::set<int> prime;
    for (int e = 0; e < static_cast<int>(g.order()); ++e) {
      const int n = g.element_order(e);
      bool is_prime = n > 1;
      for (int d = 2; d * d <= n; ++d) is_prime = is_prime && n % d != 0;
      if (is_prime) prime.insert(cls[e]);
    }
    std::set<int> hit;
    for (const auto& t : spherical_fixed_point_annotation(sym, torsion_representatives(sym)).entries) {
      hit.insert(cls[g.element(t.word)]);
    }
    o.require(hit == prime, sym.to_string() + " misses a class");
    out << sym.to_string() << ": " << prime.size() << " classes; ";
  }
  if (o.passed) o.detail = out.str();
  return o;
}

// 11 --------------------------------------------------------------------------
Outcome orientability_property() {
  Outcome o;
  std::size_t tables = 0;
  for (const char* key : {"3,3,3:left", "4,3,3:right", "3,4,3:left", "4,3,4:left", "4,4,3:left", "4,3,6:right",
                          "3,3,6:right"}) {
    const auto solid = parse_solid(key);
    const Presentation pres = presentation(solid.oriented);
    for (const bool orientable : {true, false}) {
      SearchConstraints c = solid_constraints(solid, orientable);
      c.on_complete = [&](const CosetTable& t) {
        ++tables;
        // Two-colouring by depth parity of a breadth-first tree.
        std::vector<int> depth(t.size(), -1);
        std::vector<int> queue{0};
        depth[0] = 0;
        for (std::size_t k = 0; k < queue.size(); ++k) {
          for (int col = 0; col < t.columns(); ++col) {
            const int d = t.at(queue[k], col);
            if (depth[d] < 0) {
              depth[d] = depth[queue[k]] + 1;
              queue.push_back(d);
            }
          }
        }
        bool bipartite = true;
        for (int i = 0; i < t.size(); ++i) {
          for (int col = 0; col < t.columns(); ++col) bipartite = bipartite && (depth[i] + depth[t.at(i, col)]) % 2 == 1;
        }
        bool even = true;
        for (const Word& w : schreier_generators(t, pres)) even = even && w.size() % 2 == 0;
        const bool recorded = make_subgroup_record(pres, t).orientable;
        o.require(recorded == bipartite && bipartite == even, std::string(key) + " disagreement");
      };
      low_index_search(pres, c);
    }
  }
  if (o.passed) o.detail = std::to_string(tables) + " completed tables agree";
  return o;
}

// 12 --------------------------------------------------------------------------
Outcome determinism() {
  Outcome o;
  const unsigned n = std::max(2u, std::thread::hardware_concurrency());
  auto canonical = [](SolidCensus c) {
    nlohmann::json j = to_json(c);
    j.erase("search_seconds");
    return j.dump();
  };
  const std::string a = canonical(run_census(parse_solid("4,4,3:left"), fresh(1)));
  const std::string b = canonical(run_census(parse_solid("4,4,3:left"), fresh(static_cast<int>(n))));
  o.require(a == b, "outputs differ");
  if (o.passed) o.detail = "1 and " + std::to_string(n) + " threads give identical canonical censuses";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"solid inventory", inventory},
      {"spherical census", spherical},
      {"Euclidean census", euclidean},
      {"hyperbolic quick census", hyperbolic_quick},
      {"certification soundness", certification},
      {"3,3,5 dodecahedron", dodecahedral_sphere},
      {"5,3,6 dodecahedron", dodecahedron_536},
      {"5,3,5 and 3,5,3", compact_hyperbolic},
      {"Smith normal form oracle", smith_oracle},
      {"torsion completeness oracle", torsion_oracle},
      {"orientability equivalences", orientability_property},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.passed;
    std::printf("%s %2zu %s: %s (%.1fs)\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
