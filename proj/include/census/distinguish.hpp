#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "census/homology.hpp"
#include "census/invariants.hpp"
#include "census/manifold.hpp"

namespace census {

/// Conjugacy classes of subgroups of each index 1..n_max of the group
/// presented by `k`. Stops before the first index whose enumeration needs
/// more than `max_nodes` nodes (0 = unlimited); the result then ends early.
std::map<int, std::uint64_t> low_index_profile(const Presentation& k, int n_max, std::uint64_t max_nodes = 0);

/// |Gamma| / |Gamma_v| for a spherical solid, else empty.
std::optional<std::uint64_t> order_of_K(const SolidDescriptor& solid);

/// K'/K'' when H1(K) is finite of order at most `max_order`.
std::optional<AbelianInvariants> derived_quotient(const Presentation& k, std::uint64_t max_order = 5000);

struct DistinguishOptions {
  int n_max = 6;
  /// Per index and record.
  std::uint64_t max_nodes = 20'000'000;
  bool derived_series = true;
  /// Certify isomorphic fundamental groups of hyperbolic records.
  bool certify_isomorphisms = true;
  int threads = 1;
};

enum class Verdict { Distinct, Isomorphic, NotDistinguished };
std::string to_string(Verdict v);

/// Outcome for records `first` < `second` (record ids).
struct PairVerdict {
  int first = 0;
  int second = 0;
  Verdict verdict = Verdict::NotDistinguished;
  std::string reason;
};

struct DistinguishReport {
  /// Record ids grouped by certified isomorphism of fundamental groups;
  /// singletons otherwise. Ordered by least id.
  std::vector<std::vector<int>> classes;
  std::vector<PairVerdict> pairs;
  std::vector<std::string> log;
  /// Documented facts about the solid that the computation does not prove.
  std::vector<std::string> notes;
};

/// Splits the records of one solid by, in order: cusp count, H1, |K|,
/// certified isomorphism (hyperbolic only), low-index class counts of
/// increasing index, K'/K''. Fills homology and profile of each record with
/// what was computed.
DistinguishReport distinguish_report(std::vector<ManifoldRecord>& records, const DistinguishOptions& options = {});

/// Flags attached to records as documented external facts.
void attach_external_flags(std::vector<ManifoldRecord>& records);

}  // namespace census
