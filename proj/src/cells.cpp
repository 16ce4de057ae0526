#include "census/cells.hpp"

#include <stdexcept>

namespace census {

namespace {

// Local generators of the centre stabilizer are 1, 2, 3 for ambient x2, x3, x4.
std::vector<int> coset_numbering(const FiniteGroup& g, const std::vector<Letter>& local, std::vector<int>& reps) {
  const int n = static_cast<int>(g.order());
  std::vector<int> label(n, -1);
  for (int e = 0; e < n; ++e) {
    if (label[e] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(e);
    std::vector<int> queue{e};
    label[e] = id;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (Letter l : local) {
        const int f = g.regular().act(queue[k], l);
        if (label[f] < 0) {
          label[f] = id;
          queue.push_back(f);
        }
      }
    }
  }
  return label;
}

}  // namespace

CellIndexing::CellIndexing(SolidDescriptor solid)
    : solid_(std::move(solid)), group_(solid_.center_stabilizer.presentation) {
  const int m = order();
  right_.assign(3, std::vector<int>(m));
  for (int k = 0; k < 3; ++k) {
    for (int g = 0; g < m; ++g) right_[k][g] = group_.regular().act(g, k + 1);
  }
  product_.resize(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) product_[static_cast<std::size_t>(a) * m + b] = group_.multiply(a, b);
  }
  parity_.resize(m);
  for (int g = 0; g < m; ++g) parity_[g] = static_cast<int>(group_.word(g).size() % 2);

  face_ = coset_numbering(group_, {2, 3}, face_cosets_);
  edge_ = coset_numbering(group_, {1, 3}, edge_cosets_);
  vertex_ = coset_numbering(group_, {1, 2}, vertex_cosets_);
  if (face_count() != solid_.faces || edge_count() != solid_.edges || vertex_count() != solid_.vertices) {
    throw std::logic_error("cell numbering of " + solid_.key() + " disagrees with its descriptor");
  }
  for (int g = 0; g < m; ++g) {
    if (face_[g] == 0) face_stabilizer_.push_back(g);
  }
}

Word CellIndexing::ambient_word(int g) const {
  Word w = group_.word(g);
  for (Letter& l : w) l += 1;
  return w;
}

std::pair<int, int> CellIndexing::edge_endpoints(int e) const {
  const int g = edge_cosets_[e];
  return {vertex_[g], vertex_[right(g, 4)]};
}

}  // namespace census
