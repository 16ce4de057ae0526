#include "census/low_index.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "census/cells.hpp"
#include "census/errors.hpp"
#include "census/parallel.hpp"

namespace census {

namespace {

using Clock = std::chrono::steady_clock;

class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t max_nodes) : max_(max_nodes) {}

  void spend() {
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (max_ != 0 && n > max_) {
      throw BudgetExceeded("low-index search exceeded " + std::to_string(max_) + " nodes");
    }
  }
  std::uint64_t nodes() const { return nodes_.load(); }

 private:
  std::uint64_t max_;
  std::atomic<std::uint64_t> nodes_{0};
};

std::vector<std::vector<int>> to_columns(const Alphabet& a, const std::vector<Word>& words) {
  std::vector<std::vector<int>> out;
  for (const Word& w : words) {
    std::vector<int> cols;
    for (Letter l : w) cols.push_back(a.column(l));
    if (!cols.empty()) out.push_back(std::move(cols));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic Sims search over partial coset tables of at most `max_points` rows.

class SimsEngine {
 public:
  SimsEngine(const Presentation& pres, int max_points, const std::vector<Word>& torsion, NodeBudget& budget)
      : alphabet_(pres), cols_(alphabet_.size()), max_points_(max_points), budget_(budget) {
    by_first_.resize(cols_);
    for (const Word& r : pres.relators) {
      const Word fwd = pres.cyclic_reduce(r);
      if (fwd.empty()) continue;
      for (const Word& w : {fwd, pres.inverse(fwd)}) {
        std::vector<int> cols;
        for (Letter l : w) cols.push_back(alphabet_.column(l));
        for (std::size_t k = 0; k < cols.size(); ++k) {
          std::vector<int> rot(cols.begin() + static_cast<long>(k), cols.end());
          rot.insert(rot.end(), cols.begin(), cols.begin() + static_cast<long>(k));
          by_first_[rot[0]].push_back(std::move(rot));
        }
      }
    }
    for (auto& list : by_first_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    torsion_ = to_columns(alphabet_, torsion);
    table_.assign(static_cast<std::size_t>(max_points_) * cols_, kUndefined);
  }

  const Alphabet& alphabet() const { return alphabet_; }

  /// Calls emit(table) for every complete canonical table reached.
  template <class Emit>
  void run(Emit&& emit) {
    active_ = 1;
    search(emit);
  }

 private:
  int entry(int p, int c) const { return table_[static_cast<std::size_t>(p) * cols_ + c]; }

  void set(int p, int c, int q) {
    const std::size_t idx = static_cast<std::size_t>(p) * cols_ + c;
    table_[idx] = q;
    log_.push_back(idx);
  }

  void link(int p, int c, int q) {
    set(p, c, q);
    const int ci = alphabet_.inverse_column(c);
    if (!(ci == c && p == q)) set(q, ci, p);
    queue_.emplace_back(p, c);
  }

  // Scans one relator rotation based at p; fills a single gap.
  bool scan(int p, const std::vector<int>& rot) {
    const int len = static_cast<int>(rot.size());
    int f = p;
    int i = 0;
    while (i < len) {
      const int d = entry(f, rot[i]);
      if (d < 0) break;
      f = d;
      ++i;
    }
    if (i == len) return f == p;
    int b = p;
    int j = len - 1;
    while (j >= i) {
      const int d = entry(b, alphabet_.inverse_column(rot[j]));
      if (d < 0) break;
      b = d;
      --j;
    }
    if (j < i) return false;
    if (j == i) link(f, rot[i], b);
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const auto [p, c] = queue_.back();
      queue_.pop_back();
      for (const auto& rot : by_first_[c]) {
        if (!scan(p, rot)) {
          queue_.clear();
          return false;
        }
      }
    }
    return true;
  }

  bool torsion_ok() const {
    for (const auto& w : torsion_) {
      for (int p = 0; p < active_; ++p) {
        int x = p;
        for (int c : w) {
          x = entry(x, c);
          if (x < 0) break;
        }
        if (x == p) return false;
      }
    }
    return true;
  }

  // First-in-class: no other base point gives a smaller row-major table.
  bool canonical() {
    label_.assign(active_, kUndefined);
    for (int b = 1; b < active_; ++b) {
      std::fill(label_.begin(), label_.end(), kUndefined);
      order_.assign(1, b);
      label_[b] = 0;
      for (std::size_t i = 0; i < order_.size(); ++i) {
        const int x = order_[i];
        for (int c = 0; c < cols_; ++c) {
          const int y = entry(x, c);
          const int cur = entry(static_cast<int>(i), c);
          if (y < 0 || cur < 0) goto next_base;
          if (label_[y] < 0) {
            label_[y] = static_cast<int>(order_.size());
            order_.push_back(y);
          }
          if (label_[y] < cur) return false;
          if (label_[y] > cur) goto next_base;
        }
      }
    next_base:;
    }
    return true;
  }

  template <class Emit>
  void search(Emit& emit) {
    budget_.spend();
    int p = 0;
    int c = 0;
    for (; p < active_; ++p) {
      for (c = 0; c < cols_; ++c) {
        if (entry(p, c) < 0) goto found;
      }
    }
    {
      std::vector<int> rows(table_.begin(), table_.begin() + static_cast<long>(active_) * cols_);
      emit(CosetTable(alphabet_, active_, std::move(rows)));
      return;
    }
  found:
    const int ci = alphabet_.inverse_column(c);
    const int limit = std::min(active_ + 1, max_points_);
    for (int t = 0; t < limit; ++t) {
      if (t < active_ && entry(t, ci) >= 0) continue;
      const std::size_t mark = log_.size();
      const int saved = active_;
      if (t == active_) ++active_;
      link(p, c, t);
      if (propagate() && torsion_ok() && canonical()) search(emit);
      while (log_.size() > mark) {
        table_[log_.back()] = kUndefined;
        log_.pop_back();
      }
      active_ = saved;
    }
  }

  Alphabet alphabet_;
  int cols_;
  int max_points_;
  NodeBudget& budget_;
  std::vector<std::vector<std::vector<int>>> by_first_;
  std::vector<std::vector<int>> torsion_;
  std::vector<int> table_;
  std::vector<std::size_t> log_;
  std::vector<std::pair<int, int>> queue_;
  std::vector<int> label_;
  std::vector<int> order_;
  int active_ = 1;
};

bool passes_filters(const CosetTable& t, const Presentation& pres, const SearchConstraints& c) {
  if (!t.complete() || !t.relator_closed(pres)) return false;
  if (c.require_transitive && !t.transitive()) return false;
  for (const Word& w : c.torsion_words) {
    if (!is_fixed_point_free(t, w)) return false;
  }
  return !c.require_orientable || parity_orientable(t);
}

SearchReport generic_search(const Presentation& pres, const SearchConstraints& c) {
  const auto start = Clock::now();
  NodeBudget budget(c.max_nodes);
  SimsEngine engine(pres, c.target_index, c.torsion_words, budget);
  SearchReport report;
  engine.run([&](CosetTable t) {
    if (t.size() != c.target_index) return;
    if (c.on_complete) c.on_complete(t);
    if (passes_filters(t, pres, c)) report.accepted.push_back(make_subgroup_record(pres, std::move(t)));
  });
  report.nodes_explored = budget.nodes();
  report.wall_time = Clock::now() - start;
  return report;
}

// ---------------------------------------------------------------------------
// Face-pairing search. The centre stabilizer F is a transversal for K, so the
// points are the chambers g in F, x2..x4 act by right multiplication and only
// sigma, the action of x1, is unknown. sigma commutes with right
// multiplication by <x3,x4>, so it is fixed on a face by the image of the
// face's least chamber. Conjugacy classes of K are the orbits of
// sigma -> (g -> b^-1 sigma(b g)), b in F.

struct SeededShared {
  const Presentation& pres;
  const SearchConstraints& constraints;
  const CellIndexing& cells;
  int p;
  NodeBudget& budget;
  std::mutex sink_mutex;
  std::vector<std::vector<int>> accepted;
};

struct Choice {
  int partner;
  int twist;
};

class SeededWorker {
 public:
  explicit SeededWorker(SeededShared& shared)
      : s_(shared),
        cells_(shared.cells),
        m_(cells_.order()),
        sigma_(m_, kUndefined),
        partner_(cells_.face_count(), kUndefined) {}

  std::vector<Choice> choices(int f) const {
    std::vector<Choice> out;
    const auto& h = cells_.face_stabilizer();
    const int rep = cells_.face_cosets()[f];
    for (int g = f + 1; g < cells_.face_count(); ++g) {
      if (partner_[g] >= 0) continue;
      for (int d = 0; d < static_cast<int>(h.size()); ++d) {
        const int y = cells_.multiply(cells_.face_cosets()[g], h[d]);
        if (s_.constraints.require_orientable && cells_.parity(y) == cells_.parity(rep)) continue;
        out.push_back({g, d});
      }
    }
    return out;
  }

  int first_unpaired() const {
    for (int f = 0; f < static_cast<int>(partner_.size()); ++f) {
      if (partner_[f] < 0) return f;
    }
    return -1;
  }

  // Applies a pairing of face f; false if an edge cycle or canonicity fails.
  bool apply(int f, const Choice& ch) {
    const auto& h = cells_.face_stabilizer();
    const int rep = cells_.face_cosets()[f];
    const int y = cells_.multiply(cells_.face_cosets()[ch.partner], h[ch.twist]);
    partner_[f] = ch.partner;
    partner_[ch.partner] = f;
    for (int k : h) {
      const int a = cells_.multiply(rep, k);
      const int b = cells_.multiply(y, k);
      sigma_[a] = b;
      sigma_[b] = a;
    }
    for (int k : h) {
      if (!cycle_ok(cells_.multiply(rep, k)) || !cycle_ok(cells_.multiply(y, k))) return false;
    }
    return canonical();
  }

  void undo(int f) {
    const int g = partner_[f];
    for (int face : {f, g}) {
      for (int k : cells_.face_stabilizer()) sigma_[cells_.multiply(cells_.face_cosets()[face], k)] = kUndefined;
    }
    partner_[f] = kUndefined;
    partner_[g] = kUndefined;
  }

  void explore() {
    const int f = first_unpaired();
    if (f < 0) {
      complete();
      return;
    }
    for (const Choice& ch : choices(f)) {
      s_.budget.spend();
      if (apply(f, ch)) explore();
      undo(f);
    }
  }

  /// Collects the surviving states at the given pairing depth.
  void collect(int depth, std::vector<Choice>& prefix, std::vector<std::vector<Choice>>& out) {
    if (depth == 0) {
      out.push_back(prefix);
      return;
    }
    const int f = first_unpaired();
    for (const Choice& ch : choices(f)) {
      s_.budget.spend();
      prefix.push_back(ch);
      if (apply(f, ch)) collect(depth - 1, prefix, out);
      prefix.pop_back();
      undo(f);
    }
  }

  void replay(const std::vector<Choice>& prefix) {
    for (const Choice& ch : prefix) apply(first_unpaired(), ch);
  }

 private:
  int t_step(int g) const {
    const int s = sigma_[g];
    return s < 0 ? kUndefined : cells_.right(s, 2);
  }
  int t_back(int g) const { return sigma_[cells_.right(g, 2)]; }

  // The action of x1 x2 must have every cycle of length exactly p.
  bool cycle_ok(int c) const {
    const int p = s_.p;
    int back = 0;
    for (int x = c; back < p;) {
      x = t_back(x);
      if (x < 0) break;
      ++back;
      if (x == c) return back == p;
    }
    int fwd = 0;
    for (int x = c; fwd < p && back + fwd < p;) {
      x = t_step(x);
      if (x < 0) break;
      ++fwd;
      if (x == c) return false;
    }
    return back + fwd < p;
  }

  bool canonical() const {
    for (int b = 1; b < m_; ++b) {
      const int bi = cells_.inverse(b);
      for (int g = 0; g < m_; ++g) {
        const int a = sigma_[g];
        if (a < 0) break;
        const int s = sigma_[cells_.multiply(b, g)];
        if (s < 0) break;
        const int conj = cells_.multiply(bi, s);
        if (conj < a) return false;
        if (conj > a) break;
      }
    }
    return true;
  }

  void complete() {
    std::vector<int> entries(static_cast<std::size_t>(m_) * 4);
    for (int g = 0; g < m_; ++g) {
      entries[static_cast<std::size_t>(g) * 4] = sigma_[g];
      for (int k = 2; k <= 4; ++k) entries[static_cast<std::size_t>(g) * 4 + k - 1] = cells_.right(g, k);
    }
    const CosetTable table(Alphabet(s_.pres), m_, std::move(entries));
    std::lock_guard lock(s_.sink_mutex);
    if (s_.constraints.on_complete) s_.constraints.on_complete(table);
    if (passes_filters(table, s_.pres, s_.constraints)) s_.accepted.push_back(sigma_);
  }

  SeededShared& s_;
  const CellIndexing& cells_;
  int m_;
  std::vector<int> sigma_;
  std::vector<int> partner_;
};

SearchReport seeded_search(const Presentation& pres, const SearchConstraints& c) {
  const auto start = Clock::now();
  const SolidDescriptor& solid = *c.transversal;
  if (pres.generator_count() != 4 || !(Alphabet(pres) == Alphabet(presentation(solid.oriented)))) {
    throw InvalidArgument("face-pairing search needs the rank-4 Coxeter presentation of the solid");
  }
  if (static_cast<std::size_t>(c.target_index) != solid.symmetry_order()) {
    throw InvalidArgument("target index must equal the order of the centre stabilizer");
  }
  const CellIndexing cells(solid);
  NodeBudget budget(c.max_nodes);
  SeededShared shared{pres, c, cells, solid.dihedral_denominator, budget, {}, {}};

  const int depth = std::max(0, std::min(2, cells.face_count() / 2 - 1));
  std::vector<std::vector<Choice>> prefixes;
  {
    SeededWorker root(shared);
    std::vector<Choice> prefix;
    root.collect(depth, prefix, prefixes);
  }
  parallel_for(prefixes.size(), c.threads, [&](std::size_t k) {
    SeededWorker w(shared);
    w.replay(prefixes[k]);
    w.explore();
  });

  std::sort(shared.accepted.begin(), shared.accepted.end());
  SearchReport report;
  for (const auto& sigma : shared.accepted) {
    std::vector<int> entries(static_cast<std::size_t>(cells.order()) * 4);
    for (int g = 0; g < cells.order(); ++g) {
      entries[static_cast<std::size_t>(g) * 4] = sigma[g];
      for (int k = 2; k <= 4; ++k) entries[static_cast<std::size_t>(g) * 4 + k - 1] = cells.right(g, k);
    }
    report.accepted.push_back(make_subgroup_record(pres, CosetTable(Alphabet(pres), cells.order(), entries)));
  }
  report.nodes_explored = budget.nodes();
  report.wall_time = Clock::now() - start;
  return report;
}

}  // namespace

SubgroupRecord make_subgroup_record(const Presentation& pres, CosetTable table) {
  SubgroupRecord rec;
  rec.schreier_generators = schreier_generators(table, pres);
  rec.orientable = parity_orientable(table);
  rec.table = std::move(table);
  return rec;
}

SearchReport low_index_search(const Presentation& pres, const SearchConstraints& c) {
  if (c.target_index < 1) throw InvalidArgument("target index must be positive");
  return c.transversal ? seeded_search(pres, c) : generic_search(pres, c);
}

bool torsion_prune(const CosetTable& partial, const std::vector<Word>& torsion_words) {
  for (const Word& w : torsion_words) {
    for (int p = 0; p < partial.size(); ++p) {
      if (partial.act(p, w) == p) return false;
    }
  }
  return true;
}

SearchConstraints solid_constraints(const SolidDescriptor& solid, bool require_orientable) {
  SearchConstraints c;
  c.target_index = static_cast<int>(solid.symmetry_order());
  c.require_orientable = require_orientable;
  c.transversal = solid;
  const CoxeterSymbol& sym = solid.oriented;
  TorsionSet ts = torsion_representatives(sym);
  if (solid.geometry == GeometryClass::Spherical) {
    for (const auto& e : spherical_fixed_point_annotation(sym, ts).entries) {
      if (e.has_fixed_point_on_sphere.value_or(true)) c.torsion_words.push_back(e.word);
    }
  } else {
    if (!require_orientable) ts = parabolic_torsion_closure(sym, ts);
    c.torsion_words = ts.words();
  }
  return c;
}

SearchReport spherical_subgroup_search(const Presentation& pres, const SolidDescriptor& solid) {
  if (solid.geometry != GeometryClass::Spherical) {
    throw InvalidArgument("spherical search called on " + solid.key());
  }
  return low_index_search(pres, solid_constraints(solid));
}

std::map<int, std::uint64_t> subgroup_class_counts(const Presentation& pres, int max_index,
                                                   std::uint64_t max_nodes) {
  NodeBudget budget(max_nodes);
  SimsEngine engine(pres, max_index, {}, budget);
  std::map<int, std::uint64_t> counts;
  for (int n = 1; n <= max_index; ++n) counts[n] = 0;
  engine.run([&](const CosetTable& t) { ++counts[t.size()]; });
  return counts;
}

}  // namespace census
