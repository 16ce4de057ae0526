#include "census/distinguish.hpp"

#include <algorithm>
#include <numeric>

#include "census/errors.hpp"
#include "census/isometry.hpp"
#include "census/parallel.hpp"

namespace census {

std::map<int, std::uint64_t> low_index_profile(const Presentation& k, int n_max, std::uint64_t max_nodes) {
  std::map<int, std::uint64_t> out;
  for (int n = 1; n <= n_max; ++n) {
    try {
      const auto counts = subgroup_class_counts(k, n, max_nodes);
      out[n] = counts.at(n);
    } catch (const BudgetExceeded&) {
      break;
    }
  }
  return out;
}

std::optional<std::uint64_t> order_of_K(const SolidDescriptor& solid) {
  if (solid.geometry != GeometryClass::Spherical) return std::nullopt;
  const FiniteGroup gamma(presentation(solid.oriented));
  return gamma.order() / solid.symmetry_order();
}

std::optional<AbelianInvariants> derived_quotient(const Presentation& k, std::uint64_t max_order) {
  const AbelianInvariants h1 = abelianization(k);
  if (h1.free_rank > 0) return std::nullopt;
  std::uint64_t order = 1;
  for (std::int64_t t : h1.torsion) {
    order *= static_cast<std::uint64_t>(t);
    if (order > max_order) return std::nullopt;
  }
  // K acting on K/K' = H1: the presentation of K with every commutator added.
  Presentation abelian = k;
  for (int a = 1; a <= k.generator_count(); ++a) {
    for (int b = a + 1; b <= k.generator_count(); ++b) {
      abelian.relators.push_back({a, b, k.inverse(a), k.inverse(b)});
    }
  }
  const CosetTable quotient = coset_enumeration(abelian, {}, 4 * max_order + 64);
  CosetTable action(Alphabet(k), quotient.size(), quotient.entries());
  return abelianization(simplify_presentation(rewrite_subgroup_presentation(k, action)));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Distinct: return "distinct";
    case Verdict::Isomorphic: return "isomorphic";
    case Verdict::NotDistinguished: return "not distinguished";
  }
  return "?";
}

namespace {

bool is_hyperbolic(const SolidDescriptor& s) {
  return s.geometry == GeometryClass::HyperbolicCompact || s.geometry == GeometryClass::HyperbolicNoncompact;
}

bool is_symbol(const SolidDescriptor& s, int p, int q, int r) {
  return s.oriented == CoxeterSymbol{p, q, r} || s.oriented == CoxeterSymbol{r, q, p};
}

class Refinement {
 public:
  explicit Refinement(std::vector<ManifoldRecord>& records) : records_(records) {
    std::vector<int> all(records.size());
    std::iota(all.begin(), all.end(), 0);
    groups_.push_back(all);
    members_.resize(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) members_[i] = {static_cast<int>(i)};
  }

  bool unresolved() const {
    return std::any_of(groups_.begin(), groups_.end(), [](const auto& g) { return g.size() > 1; });
  }

  /// Representatives in groups that still have more than one class.
  std::vector<int> pending() const {
    std::vector<int> out;
    for (const auto& g : groups_) {
      if (g.size() > 1) out.insert(out.end(), g.begin(), g.end());
    }
    return out;
  }

  /// Splits every group whose members all have a key.
  template <class Key>
  void split(const std::string& invariant, Key&& key, DistinguishReport& report) {
    std::vector<std::vector<int>> next;
    for (const auto& g : groups_) {
      std::vector<std::optional<std::string>> keys;
      for (int r : g) keys.push_back(g.size() > 1 ? key(r) : std::nullopt);
      if (g.size() == 1 || std::any_of(keys.begin(), keys.end(), [](const auto& k) { return !k; })) {
        next.push_back(g);
        continue;
      }
      std::vector<std::pair<std::string, std::vector<int>>> buckets;
      for (std::size_t i = 0; i < g.size(); ++i) {
        auto it = std::find_if(buckets.begin(), buckets.end(), [&](const auto& b) { return b.first == *keys[i]; });
        if (it == buckets.end()) {
          buckets.push_back({*keys[i], {g[i]}});
        } else {
          it->second.push_back(g[i]);
        }
      }
      for (std::size_t a = 0; a < buckets.size(); ++a) {
        for (std::size_t b = a + 1; b < buckets.size(); ++b) {
          for (int x : buckets[a].second) {
            for (int y : buckets[b].second) {
              separate(x, y, invariant + " (" + buckets[a].first + " vs " + buckets[b].first + ")", report);
            }
          }
        }
      }
      for (auto& b : buckets) next.push_back(std::move(b.second));
    }
    groups_ = std::move(next);
  }

  /// Records the isomorphism and drops `other` from its group.
  void merge(int rep, int other, const std::string& reason, DistinguishReport& report) {
    for (int x : members_[rep]) {
      for (int y : members_[other]) set(x, y, Verdict::Isomorphic, reason);
    }
    report.log.push_back(label(rep) + " ~ " + label(other) + ": " + reason);
    members_[rep].insert(members_[rep].end(), members_[other].begin(), members_[other].end());
    members_[other].clear();
    for (auto& g : groups_) g.erase(std::remove(g.begin(), g.end(), other), g.end());
  }

  const std::vector<std::vector<int>>& groups() const { return groups_; }

  void finish(DistinguishReport& report, const std::string& unresolved_reason) {
    for (const auto& g : groups_) {
      for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = a + 1; b < g.size(); ++b) {
          for (int x : members_[g[a]]) {
            for (int y : members_[g[b]]) set(x, y, Verdict::NotDistinguished, unresolved_reason);
          }
          report.log.push_back(label(g[a]) + " vs " + label(g[b]) + ": " + unresolved_reason);
        }
      }
    }
    for (const auto& m : members_) {
      if (m.empty()) continue;
      std::vector<int> ids;
      for (int x : m) ids.push_back(records_[x].id);
      std::sort(ids.begin(), ids.end());
      report.classes.push_back(ids);
    }
    std::sort(report.classes.begin(), report.classes.end());
    for (auto& [key, v] : verdicts_) report.pairs.push_back(v);
  }

 private:
  std::string label(int r) const { return "#" + std::to_string(records_[r].id); }

  void separate(int x, int y, const std::string& reason, DistinguishReport& report) {
    for (int a : members_[x]) {
      for (int b : members_[y]) set(a, b, Verdict::Distinct, reason);
    }
    report.log.push_back(label(x) + " vs " + label(y) + ": distinct by " + reason);
  }

  void set(int x, int y, Verdict v, const std::string& reason) {
    int a = records_[x].id;
    int b = records_[y].id;
    if (a > b) std::swap(a, b);
    verdicts_[{a, b}] = PairVerdict{a, b, v, reason};
  }

  std::vector<ManifoldRecord>& records_;
  std::vector<std::vector<int>> groups_;
  std::vector<std::vector<int>> members_;
  std::map<std::pair<int, int>, PairVerdict> verdicts_;
};

}  // namespace

DistinguishReport distinguish_report(std::vector<ManifoldRecord>& records, const DistinguishOptions& options) {
  DistinguishReport report;
  if (records.empty()) return report;
  const SolidDescriptor& solid = records.front().solid;
  const Presentation gamma = presentation(solid.oriented);
  const auto order = order_of_K(solid);

  for (ManifoldRecord& r : records) {
    if (!r.homology || !r.subgroup.presentation_of_K) r.homology = h1_of(r.subgroup, gamma);
    InvariantProfile p;
    p.h1 = *r.homology;
    p.cusp_count = r.cusp_count;
    p.order_of_K = order;
    r.profile = p;
  }

  Refinement refine(records);
  refine.split("cusp count", [&](int r) { return std::optional(std::to_string(records[r].cusp_count)); }, report);
  refine.split("H1", [&](int r) { return std::optional(records[r].homology->to_string()); }, report);
  refine.split(
      "|K|", [&](int) { return order ? std::optional(std::to_string(*order)) : std::nullopt; }, report);

  if (options.certify_isomorphisms && is_hyperbolic(solid)) {
    const auto groups = refine.groups();
    for (const auto& g : groups) {
      std::vector<int> alive = g;
      for (std::size_t a = 0; a < alive.size(); ++a) {
        for (std::size_t b = a + 1; b < alive.size();) {
          if (certify_isomorphism(solid.oriented, records[alive[a]].subgroup, records[alive[b]].subgroup)) {
            refine.merge(alive[a], alive[b], "fundamental groups isomorphic (epimorphisms both ways)", report);
            alive.erase(alive.begin() + static_cast<long>(b));
          } else {
            ++b;
          }
        }
      }
    }
  }

  for (int n = 2; n <= options.n_max && refine.unresolved(); ++n) {
    const std::vector<int> todo = refine.pending();
    std::vector<std::optional<std::map<int, std::uint64_t>>> counts(todo.size());
    parallel_for(todo.size(), options.threads, [&](std::size_t k) {
      try {
        counts[k] = subgroup_class_counts(*records[todo[k]].subgroup.presentation_of_K, n, options.max_nodes);
      } catch (const BudgetExceeded&) {
      }
    });
    std::map<int, std::optional<std::uint64_t>> at;
    for (std::size_t k = 0; k < todo.size(); ++k) {
      InvariantProfile& p = *records[todo[k]].profile;
      p.profile_limit = n;
      if (counts[k]) {
        p.low_index_class_counts = *counts[k];
        at[todo[k]] = counts[k]->at(n);
      } else {
        at[todo[k]] = std::nullopt;
      }
    }
    refine.split(
        "index-" + std::to_string(n) + " subgroup classes",
        [&](int r) { return at[r] ? std::optional(std::to_string(*at[r])) : std::nullopt; }, report);
  }

  if (options.derived_series && refine.unresolved()) {
    std::map<int, std::optional<AbelianInvariants>> derived;
    for (int r : refine.pending()) {
      derived[r] = derived_quotient(*records[r].subgroup.presentation_of_K);
      records[r].profile->derived_series_quotient = derived[r];
    }
    refine.split(
        "K'/K''", [&](int r) { return derived[r] ? std::optional(derived[r]->to_string()) : std::nullopt; },
        report);
  }

  std::string unresolved = "not distinguished by computed invariants";
  if (is_symbol(solid, 5, 3, 6)) {
    report.notes.push_back(
        "{5,3,6} is non-arithmetic and maximal, so by Margulis' commensurator theorem subgroups that are "
        "non-conjugate in it give non-isometric manifolds (external fact, not computed)");
    unresolved += "; non-conjugate in a non-arithmetic maximal group (external fact)";
  }
  if (is_symbol(solid, 4, 3, 4)) {
    report.notes.push_back("Euclidean manifolds are compared up to similarity; see record flags");
  }
  refine.finish(report, unresolved);
  return report;
}

void attach_external_flags(std::vector<ManifoldRecord>& records) {
  if (records.empty() || !is_symbol(records.front().solid, 4, 3, 4)) return;
  const AbelianInvariants target = from_cyclic_factors({2, 2}, 1);
  std::vector<ManifoldRecord*> hits;
  for (ManifoldRecord& r : records) {
    if (r.homology && *r.homology == target) hits.push_back(&r);
  }
  if (hits.size() != 2) return;
  for (int k = 0; k < 2; ++k) {
    const std::string flag =
        "related to #" + std::to_string(hits[1 - k]->id) + " by a Euclidean similarity (Prok; external fact)";
    if (std::find(hits[k]->external_flags.begin(), hits[k]->external_flags.end(), flag) ==
        hits[k]->external_flags.end()) {
      hits[k]->external_flags.push_back(flag);
    }
  }
}

}  // namespace census
