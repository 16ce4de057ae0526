#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "census/presentation.hpp"

namespace census {

inline constexpr int kUndefined = -1;

/// Complete action of a finitely presented group on the right cosets of a
/// subgroup. Points are 0-based; point 0 is the coset of the subgroup itself.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(Alphabet alphabet, int size, std::vector<int> entries);

  int size() const { return size_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int columns() const { return alphabet_.size(); }
  const std::vector<int>& entries() const { return entries_; }

  int at(int point, int column) const {
    return entries_[static_cast<std::size_t>(point) * columns() + column];
  }
  int act(int point, Letter l) const { return at(point, alphabet_.column(l)); }
  int act(int point, const Word& w) const;

  bool complete() const;
  /// Every relator acts trivially at every point.
  bool relator_closed(const Presentation& pres) const;
  bool transitive() const;

  /// The same action relabelled so that `point` becomes the base point,
  /// points numbered by first appearance in a row-major scan.
  CosetTable rebased(int point) const;

  bool operator==(const CosetTable&) const = default;

 private:
  Alphabet alphabet_;
  int size_ = 0;
  std::vector<int> entries_;
};

/// Coset enumeration with Felsch-style definitions (lowest undefined entry
/// first) and union-find coincidence processing. The result is standardized.
/// Throws BudgetExceeded if more than `max_cosets` cosets are live at once.
CosetTable coset_enumeration(const Presentation& pres, const std::vector<Word>& subgroup,
                             std::size_t max_cosets = 1'000'000);

/// Permutation of the points induced by `w` (right action, left to right).
std::vector<int> word_action(const CosetTable& t, const Word& w);
bool is_fixed_point_free(const CosetTable& t, const Word& w);

/// Sign character kills the base-point stabilizer: every generator edge of the
/// Schreier graph joins the two sides of a bipartition.
bool parity_orientable(const CosetTable& t);

/// Breadth-first spanning tree data and the Schreier generators read from the
/// non-tree edges. Edge ids index `generators`.
struct SchreierData {
  std::vector<Word> representatives;  // u_i, with base . u_i = i
  std::vector<Word> generators;       // u_i x u_{i.x}^-1, free-reduced
  /// For every (point, column): Schreier generator index traversed (+1-based,
  /// negative when traversed against its orientation) or 0 for tree edges.
  std::vector<int> edge_letter;
};
SchreierData schreier_data(const CosetTable& t, const Presentation& pres);
std::vector<Word> schreier_generators(const CosetTable& t, const Presentation& pres);

/// Number of orbits of the group generated by `gens` on the points.
int orbit_count(const CosetTable& t, const std::vector<Word>& gens);

}  // namespace census
