#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "census/coset_table.hpp"
#include "census/coxeter.hpp"
#include "census/presentation.hpp"

namespace census {

/// A subgroup K given by the action of the group on its right cosets; K is
/// the stabilizer of point 0.
struct SubgroupRecord {
  CosetTable table;
  std::vector<Word> schreier_generators;
  bool orientable = false;
  /// Rewritten presentation of K, once computed.
  std::optional<Presentation> presentation_of_K;
};

struct SearchConstraints {
  int target_index = 1;
  /// Every word must act without fixed points on an accepted table.
  std::vector<Word> torsion_words;
  bool require_orientable = true;
  bool require_transitive = true;
  /// When set, the centre stabilizer of this solid must be a transversal for
  /// K and the search runs over face pairings of the solid.
  std::optional<SolidDescriptor> transversal;
  /// Search nodes allowed before BudgetExceeded; 0 means unlimited.
  std::uint64_t max_nodes = 0;
  int threads = 1;
  /// Called on every complete table reached, before the torsion and
  /// orientability filters. Calls are serialized.
  std::function<void(const CosetTable&)> on_complete;
};

struct SearchReport {
  /// One table per conjugacy class, in canonical order.
  std::vector<SubgroupRecord> accepted;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{};
};

/// Conjugacy-class representatives of subgroups of index
/// `c.target_index` meeting the constraints. Each representative is the
/// first of its class in the canonical order.
SearchReport low_index_search(const Presentation& pres, const SearchConstraints& c);

/// False when some torsion word already closes a cycle fixing a point of the
/// partial table (undefined entries are kUndefined); a complete table gives
/// the exact fixed-point test.
bool torsion_prune(const CosetTable& partial, const std::vector<Word>& torsion_words);

/// The census constraints for a solid: index |Gamma_v|, the torsion filter for
/// its geometry, and the solid's centre stabilizer as transversal. Spherical
/// filters keep only torsion classes with fixed points on the sphere;
/// non-orientable searches add the finite parabolics' torsion classes.
SearchConstraints solid_constraints(const SolidDescriptor& solid, bool require_orientable = true);

/// Census search for a spherical solid.
SearchReport spherical_subgroup_search(const Presentation& pres, const SolidDescriptor& solid);

/// Number of conjugacy classes of subgroups of each index 1..max_index.
std::map<int, std::uint64_t> subgroup_class_counts(const Presentation& pres, int max_index,
                                                   std::uint64_t max_nodes = 0);

/// Builds the record for a complete table: Schreier generators, orientability.
SubgroupRecord make_subgroup_record(const Presentation& pres, CosetTable table);

}  // namespace census
