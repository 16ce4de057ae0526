#pragma once

#include <utility>
#include <vector>

#include "census/coxeter.hpp"
#include "census/finite_group.hpp"

namespace census {

/// The chambers of a solid are the elements g of its centre stabilizer; the
/// face, edge and vertex of chamber g are the cosets g<x3,x4>, g<x2,x4> and
/// g<x2,x3>. Chambers follow the breadth-first element order (0 = identity);
/// cells are numbered by the first chamber meeting them.
class CellIndexing {
 public:
  explicit CellIndexing(SolidDescriptor solid);

  const SolidDescriptor& solid() const { return solid_; }
  const FiniteGroup& group() const { return group_; }
  /// m = |Gamma_v|, the number of chambers.
  int order() const { return static_cast<int>(group_.order()); }

  /// Word for g in the ambient generators x2, x3, x4.
  Word ambient_word(int g) const;
  /// g . x_k for ambient generator k in {2, 3, 4}.
  int right(int g, int k) const { return right_[k - 2][g]; }
  int multiply(int a, int b) const { return product_[static_cast<std::size_t>(a) * order() + b]; }
  int inverse(int g) const { return group_.inverse(g); }
  /// Word length of g mod 2.
  int parity(int g) const { return parity_[g]; }

  int face(int g) const { return face_[g]; }
  int edge(int g) const { return edge_[g]; }
  int vertex(int g) const { return vertex_[g]; }
  int face_count() const { return static_cast<int>(face_cosets_.size()); }
  int edge_count() const { return static_cast<int>(edge_cosets_.size()); }
  int vertex_count() const { return static_cast<int>(vertex_cosets_.size()); }

  /// Least chamber of each cell.
  const std::vector<int>& face_cosets() const { return face_cosets_; }
  const std::vector<int>& edge_cosets() const { return edge_cosets_; }
  const std::vector<int>& vertex_cosets() const { return vertex_cosets_; }

  /// Elements of <x3,x4>, identity first; chambers of face f are rep_f . h.
  const std::vector<int>& face_stabilizer() const { return face_stabilizer_; }
  /// Vertices joined by edge e: vertex(g) and vertex(g . x4) for g in e.
  std::pair<int, int> edge_endpoints(int e) const;

 private:
  SolidDescriptor solid_;
  FiniteGroup group_;
  std::vector<std::vector<int>> right_;
  std::vector<int> product_;
  std::vector<int> parity_;
  std::vector<int> face_, edge_, vertex_;
  std::vector<int> face_cosets_, edge_cosets_, vertex_cosets_;
  std::vector<int> face_stabilizer_;
};

}  // namespace census
