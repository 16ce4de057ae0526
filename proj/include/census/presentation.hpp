#pragma once

#include <string>
#include <vector>

namespace census {

/// A letter is +k for generator k (1-based) and -k for its inverse.
using Letter = int;
using Word = std::vector<Letter>;

/// Finitely presented group. Involutory generators are written with positive
/// letters only; their inverse letter is never produced by the helpers below.
struct Presentation {
  std::vector<bool> involutions;
  std::vector<Word> relators;

  Presentation() = default;
  Presentation(std::vector<bool> invols, std::vector<Word> rels)
      : involutions(std::move(invols)), relators(std::move(rels)) {}

  int generator_count() const { return static_cast<int>(involutions.size()); }
  bool is_involution(int generator) const { return involutions[generator - 1]; }

  Letter normalize(Letter l) const;
  Letter inverse(Letter l) const;
  Word inverse(const Word& w) const;
  Word free_reduce(const Word& w) const;
  /// Free reduction followed by removal of cancelling letters around the cycle.
  Word cyclic_reduce(const Word& w) const;
};

std::string to_string(const Word& w);

/// Column layout of a coset table: one column per generator plus one per
/// inverse of a non-involutory generator.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const Presentation& pres);

  int size() const { return static_cast<int>(column_letter_.size()); }
  int generator_count() const { return static_cast<int>(forward_.size()); }
  int column(Letter l) const { return l > 0 ? forward_[l - 1] : backward_[-l - 1]; }
  int inverse_column(int c) const { return inverse_column_[c]; }
  Letter letter(int c) const { return column_letter_[c]; }
  bool is_involution_column(int c) const { return inverse_column_[c] == c; }
  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<int> forward_;
  std::vector<int> backward_;
  std::vector<int> inverse_column_;
  std::vector<Letter> column_letter_;
};

}  // namespace census
