#include "census/isometry.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "census/coset_table.hpp"
#include "census/errors.hpp"
#include "census/homology.hpp"

namespace census {

namespace {

QuadraticNumber mul(const QuadraticNumber& x, const QuadraticNumber& y, int d) {
  return {x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a};
}

bool is_zero(const QuadraticNumber& x) { return x.a == 0 && x.b == 0; }

// cos(pi/m) as a + b sqrt(d); d is 1 when no root is needed.
std::pair<QuadraticNumber, int> cos_pi_over(int m) {
  switch (m) {
    case 1: return {{-1, 0}, 1};
    case 2: return {{0, 0}, 1};
    case 3: return {{mpq_class(1, 2), 0}, 1};
    case 4: return {{0, mpq_class(1, 2)}, 2};
    case 5: return {{mpq_class(1, 4), mpq_class(1, 4)}, 5};
    case 6: return {{0, mpq_class(1, 2)}, 3};
    default: throw InvalidArgument("no exact cosine for label " + std::to_string(m));
  }
}

using Matrix = std::array<double, 16>;

Matrix product(const Matrix& x, const Matrix& y) {
  Matrix z{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      const double v = x[i * 4 + k];
      if (v == 0.0) continue;
      for (int j = 0; j < 4; ++j) z[i * 4 + j] += v * y[k * 4 + j];
    }
  }
  return z;
}

double trace(const Matrix& x) { return x[0] + x[5] + x[10] + x[15]; }

bool same_trace(double x, double y) { return std::abs(x - y) <= 1e-6 * std::max(1.0, std::abs(x)); }

Word positive(Word w) {
  for (Letter& l : w) l = std::abs(l);
  return w;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

// Word in x1..x4 for a word in the subgroup generators.
Word expand(const SubgroupGenerators& g, const Word& w) {
  Word out;
  for (Letter l : w) {
    const Word& base = g.generators[std::abs(l) - 1];
    const Word piece = l > 0 ? base : reversed(base);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

struct Element {
  Matrix matrix;
  Matrix inverse;
  Word word;  // over the subgroup generators
};

// Distinct elements of the subgroup reached by words of length <= max_length.
std::vector<Element> ball(const CoxeterSymbol& sym, const SubgroupGenerators& g, int max_length) {
  const int k = static_cast<int>(g.generators.size());
  std::vector<Matrix> fwd, bwd;
  for (const Word& w : g.generators) {
    fwd.push_back(reflection_matrix(sym, w));
    bwd.push_back(reflection_matrix(sym, reversed(w)));
  }
  auto key = [](const Matrix& m) {
    std::array<long long, 16> out{};
    for (int i = 0; i < 16; ++i) out[i] = std::llround(m[i] * 1e6);
    return out;
  };
  Matrix id{};
  for (int i = 0; i < 4; ++i) id[i * 5] = 1.0;
  std::vector<Element> out{{id, id, {}}};
  std::set<std::array<long long, 16>> seen{key(id)};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t e = begin; e < end; ++e) {
      for (int gen = 1; gen <= k; ++gen) {
        for (int s : {1, -1}) {
          const Letter l = s * gen;
          if (!out[e].word.empty() && out[e].word.back() == -l) continue;
          Matrix m = product(out[e].matrix, s > 0 ? fwd[gen - 1] : bwd[gen - 1]);
          if (!seen.insert(key(m)).second) continue;
          Matrix inv = product(s > 0 ? bwd[gen - 1] : fwd[gen - 1], out[e].inverse);
          Word w = out[e].word;
          w.push_back(l);
          out.push_back({m, inv, std::move(w)});
        }
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace

ExactReflectionRep::ExactReflectionRep(const CoxeterSymbol& sym) : pres_(census::presentation(sym)) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto [c, d] = cos_pi_over(sym.label(i + 1, j + 1));
      if (d != 1) {
        if (d_ != 1 && d_ != d) throw InvalidArgument("symbol " + sym.to_string() + " needs two square roots");
        d_ = d;
      }
      bilinear_[i][j] = {-c.a, -c.b};
    }
  }
}

bool ExactReflectionRep::is_identity(const Word& w) const {
  QuadraticNumber m[4][4];
  for (int i = 0; i < 4; ++i) m[i][i] = {1, 0};
  for (Letter l : w) {
    const int g = std::abs(l) - 1;
    QuadraticNumber column[4];
    for (int r = 0; r < 4; ++r) column[r] = m[r][g];
    for (int r = 0; r < 4; ++r) {
      if (is_zero(column[r])) continue;
      for (int c = 0; c < 4; ++c) {
        if (is_zero(bilinear_[g][c])) continue;
        const QuadraticNumber t = mul(column[r], bilinear_[g][c], d_);
        m[r][c].a -= 2 * t.a;
        m[r][c].b -= 2 * t.b;
      }
    }
  }
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (m[r][c].b != 0 || m[r][c].a != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

SubgroupGenerators subgroup_generators(const Presentation& pres, const SubgroupRecord& rec) {
  SubgroupGenerators out;
  std::vector<int> survivors;
  out.presentation = simplify_presentation(rewrite_subgroup_presentation(pres, rec.table), 1.5, &survivors);
  const auto gens = rec.schreier_generators.empty() ? schreier_generators(rec.table, pres) : rec.schreier_generators;
  for (int s : survivors) out.generators.push_back(positive(gens[s - 1]));
  return out;
}

bool verify_epimorphism(const ExactReflectionRep& exact, const SubgroupGenerators& source, const Epimorphism& epi,
                        const CosetTable& target_table) {
  if (epi.images.size() != source.generators.size()) return false;
  for (const Word& im : epi.images) {
    if (target_table.act(0, im) != 0) return false;
  }
  for (const Word& r : source.presentation.relators) {
    Word w;
    for (Letter l : r) {
      const Word& im = epi.images[std::abs(l) - 1];
      if (l > 0) {
        w.insert(w.end(), im.begin(), im.end());
      } else {
        w.insert(w.end(), im.rbegin(), im.rend());
      }
    }
    if (!exact.is_identity(w)) return false;
  }
  try {
    return coset_enumeration(exact.presentation(), epi.images).size() == target_table.size();
  } catch (const BudgetExceeded&) {
    return false;
  }
}

std::optional<Epimorphism> find_epimorphism(const CoxeterSymbol& sym, const SubgroupGenerators& source,
                                            const SubgroupGenerators& target, const CosetTable& target_table,
                                            int max_length) {
  const ExactReflectionRep exact(sym);
  const int k = static_cast<int>(source.generators.size());
  const std::vector<Element> pool = ball(sym, target, max_length);

  std::vector<Matrix> src, src_inv;
  for (const Word& w : source.generators) {
    src.push_back(reflection_matrix(sym, w));
    src_inv.push_back(reflection_matrix(sym, reversed(w)));
  }
  std::vector<std::vector<int>> candidates(k);
  for (int i = 0; i < k; ++i) {
    for (int e = 0; e < static_cast<int>(pool.size()); ++e) {
      if (same_trace(trace(pool[e].matrix), trace(src[i]))) candidates[i].push_back(e);
    }
  }

  std::vector<int> pick(k);
  std::optional<Epimorphism> found;
  std::uint64_t nodes = 0;
  constexpr std::uint64_t kMaxNodes = 50'000'000;

  auto accept = [&]() {
    auto image = [&](Letter l) -> const Matrix& {
      return l > 0 ? pool[pick[l - 1]].matrix : pool[pick[-l - 1]].inverse;
    };
    for (const Word& r : source.presentation.relators) {
      Matrix m{};
      for (int i = 0; i < 4; ++i) m[i * 5] = 1.0;
      for (Letter l : r) m = product(m, image(l));
      for (int i = 0; i < 16; ++i) {
        if (std::abs(m[i] - (i % 5 == 0 ? 1.0 : 0.0)) > 1e-6 * std::max(1.0, std::abs(m[i]))) return false;
      }
    }
    Epimorphism epi;
    for (int i = 0; i < k; ++i) epi.images.push_back(expand(target, pool[pick[i]].word));
    if (!verify_epimorphism(exact, source, epi, target_table)) return false;
    found = std::move(epi);
    return true;
  };

  std::function<bool(int)> extend = [&](int i) -> bool {
    if (i == k) return accept();
    for (int e : candidates[i]) {
      if (++nodes > kMaxNodes) return true;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        const Matrix& x = pool[pick[j]].matrix;
        ok = same_trace(trace(product(x, pool[e].matrix)), trace(product(src[j], src[i]))) &&
             same_trace(trace(product(x, pool[e].inverse)), trace(product(src[j], src_inv[i])));
      }
      if (!ok) continue;
      pick[i] = e;
      if (extend(i + 1)) return true;
    }
    return false;
  };
  extend(0);
  return found;
}

namespace {

Word flip(const Word& w) {
  Word out;
  for (Letter l : w) out.push_back(5 - std::abs(l));
  return out;
}

// Word u with K_b = u^-1 tau(K_a) u, when one exists.
std::optional<Word> flip_conjugator(const Presentation& pres, const CosetTable& a, const CosetTable& b) {
  std::vector<int> entries(static_cast<std::size_t>(a.size()) * a.columns());
  for (int p = 0; p < a.size(); ++p) {
    for (int g = 1; g <= 4; ++g) entries[static_cast<std::size_t>(p) * a.columns() + a.alphabet().column(g)] = a.act(p, 5 - g);
  }
  const CosetTable flipped(a.alphabet(), a.size(), std::move(entries));
  const CosetTable target = b.rebased(0);
  const SchreierData sd = schreier_data(flipped, pres);
  for (int p = 0; p < flipped.size(); ++p) {
    if (flipped.rebased(p) == target) return positive(sd.representatives[p]);
  }
  return std::nullopt;
}

Epimorphism conjugate_images(const std::vector<Word>& gens, const Word& u, bool flip_first) {
  Epimorphism epi;
  const Word u_inv = reversed(u);
  for (const Word& g : gens) {
    Word w = u_inv;
    const Word core = flip_first ? flip(g) : g;
    w.insert(w.end(), core.begin(), core.end());
    w.insert(w.end(), u.begin(), u.end());
    epi.images.push_back(flip_first ? w : flip(w));
  }
  return epi;
}

}  // namespace

std::optional<IsomorphismCertificate> certify_isomorphism(const CoxeterSymbol& sym, const SubgroupRecord& a,
                                                          const SubgroupRecord& b, int max_length) {
  std::optional<ExactReflectionRep> exact;
  try {
    exact.emplace(sym);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
  const Presentation& pres = exact->presentation();
  const SubgroupGenerators ga = subgroup_generators(pres, a);
  const SubgroupGenerators gb = subgroup_generators(pres, b);

  if (sym.palindromic()) {
    if (const auto u = flip_conjugator(pres, a.table, b.table)) {
      // K_b = u^-1 tau(K_a) u and K_a = tau(u K_b u^-1).
      IsomorphismCertificate cert{conjugate_images(ga.generators, *u, true),
                                  conjugate_images(gb.generators, reversed(*u), false)};
      if (verify_epimorphism(*exact, ga, cert.forward, b.table) &&
          verify_epimorphism(*exact, gb, cert.backward, a.table)) {
        return cert;
      }
    }
  }
  auto forward = find_epimorphism(sym, ga, gb, b.table, max_length);
  if (!forward) return std::nullopt;
  auto backward = find_epimorphism(sym, gb, ga, a.table, max_length);
  if (!backward) return std::nullopt;
  return IsomorphismCertificate{std::move(*forward), std::move(*backward)};
}

}  // namespace census
