#include "census/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "census/errors.hpp"

namespace census {

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

void swap_rows(IntegerMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntegerMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

}  // namespace

SmithForm smith_normal_form(IntegerMatrix m) {
  SmithForm out;
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<mpz_class> diag;
  mpz_class q;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero magnitude in the remaining block.
    int pi = -1;
    int pj = -1;
    for (int i = t; i < rows; ++i) {
      for (int j = t; j < cols; ++j) {
        if (m.at(i, j) != 0 && (pi < 0 || abs(m.at(i, j)) < abs(m.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    swap_rows(m, t, pi);
    swap_cols(m, t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (m.at(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
        for (int j = t; j < cols; ++j) {
          if (m.at(t, j) != 0) m.at(i, j) -= q * m.at(t, j);
        }
        if (m.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m.at(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
        for (int i = t; i < rows; ++i) {
          if (m.at(i, t) != 0) m.at(i, j) -= q * m.at(i, t);
        }
        if (m.at(t, j) != 0) clean = false;
      }
      if (clean) break;
      // A remainder is smaller than the pivot; move it into place.
      int bi = t;
      int bj = t;
      for (int i = t + 1; i < rows; ++i) {
        if (m.at(i, t) != 0 && abs(m.at(i, t)) < abs(m.at(bi, bj))) {
          bi = i;
          bj = t;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m.at(t, j) != 0 && abs(m.at(t, j)) < abs(m.at(bi, bj))) {
          bi = t;
          bj = j;
        }
      }
      swap_rows(m, t, bi);
      swap_cols(m, t, bj);
    }
    diag.push_back(abs(m.at(t, t)));
  }
  // Diagonal to divisibility chain: (a, b) -> (gcd, lcm).
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g = gcd(diag[i], diag[j]);
      mpz_class l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  }
  out.rank = static_cast<int>(diag.size());
  out.factors = std::move(diag);
  return out;
}

// ---------------------------------------------------------------------------
// Abelian invariants

std::string AbelianInvariants::to_string() const {
  if (trivial()) return "0";
  std::string s;
  for (auto t : torsion) s += (s.empty() ? "" : "+") + ("Z" + std::to_string(t));
  if (free_rank > 0) {
    s += s.empty() ? "" : "+";
    s += free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  }
  return s;
}

AbelianInvariants from_cyclic_factors(const std::vector<std::int64_t>& orders, int free_rank) {
  AbelianInvariants inv;
  inv.free_rank = free_rank;
  std::map<std::int64_t, std::vector<std::int64_t>> powers;  // prime -> prime powers
  for (std::int64_t n : orders) {
    if (n < 0) throw InvalidArgument("negative cyclic order");
    if (n == 0) {
      ++inv.free_rank;
      continue;
    }
    for (std::int64_t p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      std::int64_t q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      powers[p].push_back(q);
    }
    if (n > 1) powers[n].push_back(n);
  }
  std::size_t k = 0;
  for (auto& [p, list] : powers) {
    std::sort(list.rbegin(), list.rend());
    k = std::max(k, list.size());
  }
  // The i-th largest invariant factor collects the i-th largest prime powers.
  std::vector<std::int64_t> chain(k, 1);
  for (const auto& [p, list] : powers) {
    for (std::size_t i = 0; i < list.size(); ++i) chain[i] *= list[i];
  }
  std::reverse(chain.begin(), chain.end());
  inv.torsion = chain;
  return inv;
}

AbelianInvariants abelian_invariants(const IntegerMatrix& relations) {
  // Drop zero rows before the elimination.
  std::vector<int> keep;
  for (int i = 0; i < relations.rows(); ++i) {
    for (int j = 0; j < relations.cols(); ++j) {
      if (relations.at(i, j) != 0) {
        keep.push_back(i);
        break;
      }
    }
  }
  IntegerMatrix m(static_cast<int>(keep.size()), relations.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (int j = 0; j < relations.cols(); ++j) m.at(static_cast<int>(i), j) = relations.at(keep[i], j);
  }
  const SmithForm snf = smith_normal_form(std::move(m));
  AbelianInvariants inv;
  inv.free_rank = relations.cols() - snf.rank;
  for (const auto& d : snf.factors) {
    if (d == 1) continue;
    if (!d.fits_slong_p()) throw std::overflow_error("invariant factor exceeds 64 bits");
    inv.torsion.push_back(d.get_si());
  }
  return inv;
}

IntegerMatrix relation_matrix(const Presentation& pres) {
  IntegerMatrix m(static_cast<int>(pres.relators.size()), pres.generator_count());
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    for (Letter l : pres.relators[r]) m.at(static_cast<int>(r), std::abs(l) - 1) += l > 0 ? 1 : -1;
  }
  return m;
}

AbelianInvariants abelianization(const Presentation& pres) { return abelian_invariants(relation_matrix(pres)); }

// ---------------------------------------------------------------------------
// Reidemeister-Schreier and Tietze

Presentation rewrite_subgroup_presentation(const Presentation& pres, const CosetTable& t) {
  const SchreierData sd = schreier_data(t, pres);
  Presentation out(std::vector<bool>(sd.generators.size(), false), {});
  const int cols = t.columns();
  for (const Word& r : pres.relators) {
    for (int p = 0; p < t.size(); ++p) {
      Word w;
      int q = p;
      for (Letter l : r) {
        const int c = t.alphabet().column(l);
        const int e = sd.edge_letter[static_cast<std::size_t>(q) * cols + c];
        if (e != 0) w.push_back(e);
        q = t.at(q, c);
      }
      out.relators.push_back(out.free_reduce(w));
    }
  }
  return out;
}

namespace {

// Least rotation of w or of its inverse; identifies cyclic conjugates.
Word cyclic_key(const Presentation& pres, const Word& w) {
  Word best;
  for (const Word& v : {w, pres.inverse(w)}) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      Word rot(v.begin() + static_cast<long>(k), v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + static_cast<long>(k));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return best;
}

void tidy(Presentation& pres) {
  std::set<Word> seen;
  std::vector<Word> kept;
  for (const Word& r : pres.relators) {
    Word c = pres.cyclic_reduce(r);
    if (c.empty()) continue;
    if (seen.insert(cyclic_key(pres, c)).second) kept.push_back(std::move(c));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  pres.relators = std::move(kept);
}

std::size_t total_length(const Presentation& pres) {
  std::size_t n = 0;
  for (const Word& r : pres.relators) n += r.size();
  return n;
}

}  // namespace

Presentation simplify_presentation(const Presentation& input, double growth, std::vector<int>* survivors) {
  // Work without involution shortcuts: an involutory generator g becomes a
  // free generator with the relator g^2.
  Presentation pres(std::vector<bool>(input.generator_count(), false), input.relators);
  for (int g = 1; g <= input.generator_count(); ++g) {
    if (input.is_involution(g)) pres.relators.push_back({g, g});
  }
  tidy(pres);
  const double limit = growth * static_cast<double>(std::max<std::size_t>(total_length(pres), 1));
  std::vector<bool> alive(pres.generator_count(), true);

  for (;;) {
    // Occurrence counts per generator, overall and per relator.
    std::vector<std::size_t> total(pres.generator_count() + 1, 0);
    for (const Word& r : pres.relators) {
      for (Letter l : r) ++total[std::abs(l)];
    }
    int best_r = -1;
    int best_g = 0;
    std::size_t best_cost = 0;
    for (int ri = 0; ri < static_cast<int>(pres.relators.size()); ++ri) {
      const Word& r = pres.relators[ri];
      std::map<int, int> count;
      for (Letter l : r) ++count[std::abs(l)];
      for (const auto& [g, c] : count) {
        if (c != 1) continue;
        const std::size_t cost = (r.size() - 1) * (total[g] - 1);
        if (best_r < 0 || cost < best_cost) {
          best_r = ri;
          best_g = g;
          best_cost = cost;
        }
      }
    }
    if (best_r < 0) break;
    const std::size_t length = total_length(pres);
    if (static_cast<double>(length - pres.relators[best_r].size() + best_cost) > limit) break;

    // r = u g^e v, so g^e = (v u)^-1.
    const Word r = pres.relators[best_r];
    std::size_t pos = 0;
    while (std::abs(r[pos]) != best_g) ++pos;
    Word vu(r.begin() + static_cast<long>(pos) + 1, r.end());
    vu.insert(vu.end(), r.begin(), r.begin() + static_cast<long>(pos));
    const Word image = r[pos] > 0 ? pres.inverse(vu) : vu;
    const Word image_inv = pres.inverse(image);

    std::vector<Word> next;
    for (int ri = 0; ri < static_cast<int>(pres.relators.size()); ++ri) {
      if (ri == best_r) continue;
      Word w;
      for (Letter l : pres.relators[ri]) {
        if (std::abs(l) != best_g) {
          w.push_back(l);
        } else {
          const Word& sub = l > 0 ? image : image_inv;
          w.insert(w.end(), sub.begin(), sub.end());
        }
      }
      next.push_back(std::move(w));
    }
    pres.relators = std::move(next);
    alive[best_g - 1] = false;
    tidy(pres);
  }

  // Renumber the surviving generators.
  std::vector<int> renumber(pres.generator_count() + 1, 0);
  int n = 0;
  for (int g = 1; g <= pres.generator_count(); ++g) {
    if (alive[g - 1]) renumber[g] = ++n;
  }
  if (survivors) {
    survivors->clear();
    for (int g = 1; g <= pres.generator_count(); ++g) {
      if (alive[g - 1]) survivors->push_back(g);
    }
  }
  Presentation out(std::vector<bool>(n, false), {});
  for (const Word& r : pres.relators) {
    Word w;
    for (Letter l : r) w.push_back(l > 0 ? renumber[l] : -renumber[-l]);
    out.relators.push_back(std::move(w));
  }
  return out;
}

AbelianInvariants h1_of(SubgroupRecord& rec, const Presentation& pres) {
  if (!rec.presentation_of_K) {
    rec.presentation_of_K = simplify_presentation(rewrite_subgroup_presentation(pres, rec.table));
  }
  return abelianization(*rec.presentation_of_K);
}

// ---------------------------------------------------------------------------
// Five-slot notation

std::string format_h1(const AbelianInvariants& inv) {
  if (inv.torsion.size() > 4) {
    throw OverflowSlotError("H1 " + inv.to_string() + " has more than four torsion factors");
  }
  auto slot = [](std::int64_t v) {
    const std::string s = std::to_string(v);
    return s.size() > 1 ? "(" + s + ")" : s;
  };
  std::string out;
  for (auto t : inv.torsion) out += slot(t);
  for (std::size_t k = inv.torsion.size(); k < 4; ++k) out += "0";
  return out + slot(inv.free_rank);
}

AbelianInvariants parse_h1(const std::string& text) {
  std::vector<std::int64_t> slots;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') {
      const std::size_t close = text.find(')', i);
      if (close == std::string::npos) throw InvalidArgument("unbalanced H1 string '" + text + "'");
      slots.push_back(std::stoll(text.substr(i + 1, close - i - 1)));
      i = close;
    } else if (text[i] >= '0' && text[i] <= '9') {
      slots.push_back(text[i] - '0');
    } else {
      throw InvalidArgument("bad character in H1 string '" + text + "'");
    }
  }
  if (slots.size() != 5) throw InvalidArgument("H1 string needs five slots: '" + text + "'");
  std::vector<std::int64_t> orders;
  for (int k = 0; k < 4; ++k) {
    if (slots[k] != 0) orders.push_back(slots[k]);
  }
  return from_cyclic_factors(orders, static_cast<int>(slots[4]));
}

}  // namespace census
