#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "census/cells.hpp"
#include "census/finite_group.hpp"
#include "census/homology.hpp"
#include "census/invariants.hpp"
#include "census/low_index.hpp"

namespace census {

/// gamma_S carries face partner[S] onto face S; pairing_word[S] is gamma_S
/// in x1..x4 and fixes the base point.
struct SidePairing {
  std::vector<int> partner;
  std::vector<Word> pairing_word;
};

/// One class of identified edges: edges in increasing order, each with its
/// orientation relative to the first (+1 matching, -1 reversed).
struct EdgeCycle {
  std::vector<std::pair<int, int>> edges;
};

struct ManifoldRecord {
  int id = 0;  // 1-based within its solid
  SolidDescriptor solid;
  SubgroupRecord subgroup;
  SidePairing pairing;
  std::vector<EdgeCycle> cycles;
  std::string fi;
  std::string ei;
  std::string code;  // canonical identification code
  int cusp_count = 0;
  std::optional<AbelianInvariants> homology;
  std::optional<InvariantProfile> profile;
  std::vector<std::string> external_flags;
};

/// Per-solid data reused across records: the cell model, the presentation
/// and, for spherical solids, the finite group and its maximal parabolic
/// coset actions.
class CertificationContext {
 public:
  explicit CertificationContext(const SolidDescriptor& solid);

  const CellIndexing& cells() const { return cells_; }
  const Presentation& presentation() const { return pres_; }
  const FiniteGroup* group() const { return group_ ? &*group_ : nullptr; }
  const std::vector<CosetTable>& maximal_parabolic_actions() const { return maximal_; }

 private:
  CellIndexing cells_;
  Presentation pres_;
  std::optional<FiniteGroup> group_;
  std::vector<CosetTable> maximal_;
};

/// Labels each point by the element g of the centre stabilizer with
/// point = base . g; empty when the stabilizer is not a transversal.
std::vector<int> transversal_labels(const CellIndexing& cells, const CosetTable& t);
bool verify_transversal(const CellIndexing& cells, const SubgroupRecord& rec);

/// Throws CertificationFailure when a pairing condition fails.
SidePairing side_pairings(const CellIndexing& cells, const SubgroupRecord& rec);
/// Throws CertificationFailure unless the edge classes have exactly p edges.
std::vector<EdgeCycle> edge_cycles(const CellIndexing& cells, const SubgroupRecord& rec, const SidePairing& sp);

/// Face letters and edge letters by first appearance; the first occurrence
/// of an edge letter carries the p-1 relative signs of the later edges.
std::pair<std::string, std::string> encode_fi_ei(const CellIndexing& cells, const SidePairing& sp,
                                                 const std::vector<EdgeCycle>& cycles);

/// Least (FI, EI) over relabellings by the symmetries of the solid, written
/// "FI/EI". Throws InvalidArgument on malformed strings.
std::string canonical_identification_code(const CellIndexing& cells, const std::string& fi,
                                          const std::string& ei);

/// Double cosets K \ Gamma / <x1,x2,x3> for a noncompact solid.
int cusp_count(const SolidDescriptor& solid, const SubgroupRecord& rec);

/// Full face-pairing certification of an accepted subgroup.
ManifoldRecord certify(const CertificationContext& ctx, SubgroupRecord rec);

}  // namespace census
