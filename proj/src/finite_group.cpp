#include "census/finite_group.hpp"

#include <algorithm>

namespace census {

FiniteGroup::FiniteGroup(Presentation pres, std::size_t max_elements)
    : pres_(std::move(pres)), regular_(coset_enumeration(pres_, {}, max_elements)) {
  const int n = regular_.size();
  const Alphabet& a = regular_.alphabet();
  words_.assign(n, Word{});
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (int c = 0; c < a.size(); ++c) {
      const int d = regular_.at(queue[k], c);
      if (seen[d]) continue;
      seen[d] = 1;
      words_[d] = words_[queue[k]];
      words_[d].push_back(a.letter(c));
      queue.push_back(d);
    }
  }
  inverse_.resize(n);
  for (int e = 0; e < n; ++e) inverse_[e] = element(pres_.inverse(words_[e]));
}

int FiniteGroup::element_order(int e) const {
  int k = 1;
  for (int x = e; x != 0; x = multiply(x, e)) ++k;
  return k;
}

const std::vector<int>& FiniteGroup::conjugacy_classes() const {
  if (!classes_.empty()) return classes_;
  const int n = regular_.size();
  const int gens = pres_.generator_count();
  // g^-1 e g for each generator g, using precomputed left multiplication.
  std::vector<std::vector<int>> conj(gens, std::vector<int>(n));
  for (int g = 1; g <= gens; ++g) {
    const int ge = element(Word{g});
    const int gi = inverse_[ge];
    for (int e = 0; e < n; ++e) conj[g - 1][e] = regular_.act(regular_.act(gi, words_[e]), g);
  }
  classes_.assign(n, -1);
  for (int e = 0; e < n; ++e) {
    if (classes_[e] >= 0) continue;
    classes_[e] = e;
    std::vector<int> queue{e};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (const auto& c : conj) {
        const int f = c[queue[k]];
        if (classes_[f] < 0) {
          classes_[f] = e;
          queue.push_back(f);
        }
      }
    }
  }
  return classes_;
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
  std::vector<char> in(order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (int g : gens) {
      const int x = multiply(elems[k], g);
      if (!in[x]) {
        in[x] = 1;
        elems.push_back(x);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace census
