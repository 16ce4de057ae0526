#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "census/homology.hpp"

namespace census {

/// Isomorphism invariants of K = pi1(M).
struct InvariantProfile {
  AbelianInvariants h1;
  int cusp_count = 0;
  std::optional<std::uint64_t> order_of_K;  // empty for infinite K
  /// Conjugacy classes of subgroups of each index 2..profile_limit.
  std::map<int, std::uint64_t> low_index_class_counts;
  /// Highest index requested; counts stop earlier when the node budget ran out.
  int profile_limit = 0;
  std::optional<AbelianInvariants> derived_series_quotient;  // K'/K''

  bool operator==(const InvariantProfile&) const = default;
};

}  // namespace census
