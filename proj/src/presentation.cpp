#include "census/presentation.hpp"

#include <cstdlib>

namespace census {

Letter Presentation::normalize(Letter l) const {
  return (l < 0 && is_involution(-l)) ? -l : l;
}

Letter Presentation::inverse(Letter l) const {
  return is_involution(std::abs(l)) ? std::abs(l) : -l;
}

Word Presentation::inverse(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word Presentation::free_reduce(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    l = normalize(l);
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word Presentation::cyclic_reduce(const Word& w) const {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == inverse(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w) {
    s += "x" + std::to_string(std::abs(l));
    if (l < 0) s += "^-1";
  }
  return s;
}

Alphabet::Alphabet(const Presentation& pres) {
  const int n = pres.generator_count();
  forward_.resize(n);
  backward_.resize(n);
  for (int g = 1; g <= n; ++g) {
    forward_[g - 1] = static_cast<int>(column_letter_.size());
    column_letter_.push_back(g);
    if (pres.is_involution(g)) {
      backward_[g - 1] = forward_[g - 1];
      inverse_column_.push_back(forward_[g - 1]);
    } else {
      backward_[g - 1] = static_cast<int>(column_letter_.size());
      column_letter_.push_back(-g);
      inverse_column_.push_back(backward_[g - 1]);
      inverse_column_.push_back(forward_[g - 1]);
    }
  }
}

}  // namespace census
