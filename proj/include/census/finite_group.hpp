#pragma once

#include <cstddef>
#include <vector>

#include "census/coset_table.hpp"
#include "census/presentation.hpp"

namespace census {

/// Every element of a finite group, realized as the points of its regular
/// coset table. Element 0 is the identity; element indices follow the
/// breadth-first order, so each word() is a shortest word for its element.
class FiniteGroup {
 public:
  /// Throws BudgetExceeded if the group has more than `max_elements` elements.
  explicit FiniteGroup(Presentation pres, std::size_t max_elements = 1'000'000);

  std::size_t order() const { return static_cast<std::size_t>(regular_.size()); }
  const Presentation& presentation() const { return pres_; }
  const CosetTable& regular() const { return regular_; }
  const Word& word(int e) const { return words_[e]; }

  int element(const Word& w) const { return regular_.act(0, w); }
  int multiply(int a, int b) const { return regular_.act(a, words_[b]); }
  int inverse(int e) const { return inverse_[e]; }
  /// g^-1 e g
  int conjugate(int e, int g) const { return multiply(multiply(inverse_[g], e), g); }
  int element_order(int e) const;

  /// Class id per element; classes numbered by their least element.
  const std::vector<int>& conjugacy_classes() const;
  /// Elements of the subgroup generated by `gens`.
  std::vector<int> closure(const std::vector<int>& gens) const;

 private:
  Presentation pres_;
  CosetTable regular_;
  std::vector<Word> words_;
  std::vector<int> inverse_;
  mutable std::vector<int> classes_;
};

}  // namespace census
