#include "census/coset_table.hpp"

#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>
#include <utility>

#include "census/errors.hpp"

namespace census {

CosetTable::CosetTable(Alphabet alphabet, int size, std::vector<int> entries)
    : alphabet_(std::move(alphabet)), size_(size), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(size_) * alphabet_.size()) {
    throw InvalidArgument("coset table entry count does not match its dimensions");
  }
}

int CosetTable::act(int point, const Word& w) const {
  for (Letter l : w) {
    if (point == kUndefined) return kUndefined;
    point = act(point, l);
  }
  return point;
}

bool CosetTable::complete() const {
  for (int e : entries_) {
    if (e < 0 || e >= size_) return false;
  }
  for (int c = 0; c < columns(); ++c) {
    const int ci = alphabet_.inverse_column(c);
    for (int i = 0; i < size_; ++i) {
      if (at(at(i, c), ci) != i) return false;
    }
  }
  return true;
}

bool CosetTable::relator_closed(const Presentation& pres) const {
  for (const Word& r : pres.relators) {
    for (int i = 0; i < size_; ++i) {
      if (act(i, r) != i) return false;
    }
  }
  return true;
}

bool CosetTable::transitive() const {
  if (size_ == 0) return true;
  std::vector<char> seen(size_, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (int c = 0; c < columns(); ++c) {
      const int d = at(queue[k], c);
      if (d >= 0 && !seen[d]) {
        seen[d] = 1;
        queue.push_back(d);
      }
    }
  }
  return static_cast<int>(queue.size()) == size_;
}

CosetTable CosetTable::rebased(int point) const {
  std::vector<int> label(size_, kUndefined);
  std::vector<int> order{point};
  label[point] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int c = 0; c < columns(); ++c) {
      const int d = at(order[k], c);
      if (d >= 0 && label[d] == kUndefined) {
        label[d] = static_cast<int>(order.size());
        order.push_back(d);
      }
    }
  }
  const int n = static_cast<int>(order.size());
  std::vector<int> out(static_cast<std::size_t>(n) * columns());
  for (int k = 0; k < n; ++k) {
    for (int c = 0; c < columns(); ++c) {
      const int d = at(order[k], c);
      out[static_cast<std::size_t>(k) * columns() + c] = d < 0 ? kUndefined : label[d];
    }
  }
  return CosetTable(alphabet_, n, std::move(out));
}

namespace {

class Enumerator {
 public:
  Enumerator(const Presentation& pres, const std::vector<Word>& subgroup, std::size_t max_cosets)
      : alphabet_(pres), cols_(alphabet_.size()), max_(max_cosets) {
    auto to_columns = [&](const Word& w) {
      std::vector<int> out;
      for (Letter l : pres.free_reduce(w)) out.push_back(alphabet_.column(l));
      return out;
    };
    for (const Word& r : pres.relators) {
      auto fwd = to_columns(pres.cyclic_reduce(r));
      if (fwd.empty()) continue;
      relators_.push_back(fwd);
      relators_.push_back(to_columns(pres.inverse(pres.cyclic_reduce(r))));
    }
    by_column_.resize(cols_);
    for (std::size_t r = 0; r < relators_.size(); ++r) {
      for (std::size_t k = 0; k < relators_[r].size(); ++k) {
        by_column_[relators_[r][k]].emplace_back(static_cast<int>(r), static_cast<int>(k));
      }
    }
    for (const Word& w : subgroup) {
      auto cols = to_columns(w);
      if (!cols.empty()) subgroup_.push_back(std::move(cols));
    }
  }

  CosetTable run() {
    new_coset();
    for (const auto& w : subgroup_) {
      scan_and_fill(0, w);
      process_deductions();
    }
    int next = 0;
    for (;;) {
      int c = next;
      int x = -1;
      for (; c < rows(); ++c) {
        if (!alive(c)) continue;
        for (int k = 0; k < cols_; ++k) {
          if (entry(c, k) < 0) {
            x = k;
            break;
          }
        }
        if (x >= 0) break;
      }
      if (x < 0) break;
      if (static_cast<std::size_t>(rows()) >= 2 * max_ + 64) {
        compact();
        next = 0;
        continue;
      }
      next = c;
      const int d = new_coset();
      link(c, x, d);
      process_deductions();
    }
    return standardized();
  }

 private:
  Alphabet alphabet_;
  int cols_;
  std::size_t max_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<std::pair<int, int>>> by_column_;
  std::vector<std::vector<int>> subgroup_;
  std::vector<int> table_;
  std::vector<int> parent_;  // -1 for live cosets
  std::size_t live_ = 0;
  std::vector<std::pair<int, int>> deductions_;
  std::deque<int> queue_;

  int rows() const { return static_cast<int>(parent_.size()); }
  bool alive(int c) const { return parent_[c] < 0; }
  int& entry(int c, int x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
  int inv(int x) const { return alphabet_.inverse_column(x); }

  int new_coset() {
    if (live_ >= max_) {
      throw BudgetExceeded("coset enumeration exceeded " + std::to_string(max_) + " live cosets");
    }
    table_.resize(table_.size() + cols_, kUndefined);
    parent_.push_back(-1);
    ++live_;
    return rows() - 1;
  }

  void link(int c, int x, int d) {
    entry(c, x) = d;
    entry(d, inv(x)) = c;
    deductions_.emplace_back(c, x);
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] >= 0) r = parent_[r];
    while (parent_[c] >= 0) {
      const int up = parent_[c];
      parent_[c] = r;
      c = up;
    }
    return r;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue_.push_back(b);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!queue_.empty()) {
      const int g = queue_.front();
      queue_.pop_front();
      for (int x = 0; x < cols_; ++x) {
        const int d = entry(g, x);
        if (d < 0) continue;
        const int xi = inv(x);
        entry(d, xi) = kUndefined;
        const int mu = rep(g);
        const int nu = rep(d);
        if (entry(mu, x) >= 0) {
          merge(nu, entry(mu, x));
        } else if (entry(nu, xi) >= 0) {
          merge(mu, entry(nu, xi));
        } else {
          entry(mu, x) = nu;
          entry(nu, xi) = mu;
          deductions_.emplace_back(mu, x);
        }
      }
    }
  }

  // Trace the cyclic rotation of relator `r` starting at `off` from coset c,
  // deducing a single missing entry or recording a coincidence.
  void scan(int c, const std::vector<int>& w, int off) {
    const int n = static_cast<int>(w.size());
    auto letter = [&](int k) { return w[(off + k) % n]; };
    int f = c;
    int i = 0;
    while (i < n) {
      const int nx = entry(f, letter(i));
      if (nx < 0) break;
      f = nx;
      ++i;
    }
    if (i == n) {
      if (f != c) coincidence(f, c);
      return;
    }
    int b = c;
    int j = n - 1;
    while (j >= i) {
      const int nx = entry(b, inv(letter(j)));
      if (nx < 0) break;
      b = nx;
      --j;
    }
    if (j < i) {
      coincidence(f, b);
    } else if (j == i) {
      link(f, letter(i), b);
    }
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    const int n = static_cast<int>(w.size());
    for (;;) {
      int f = c;
      int i = 0;
      while (i < n && entry(f, w[i]) >= 0) f = entry(f, w[i++]);
      if (i == n) {
        if (f != c) coincidence(f, c);
        return;
      }
      int b = c;
      int j = n - 1;
      while (j >= i && entry(b, inv(w[j])) >= 0) b = entry(b, inv(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (j == i) {
        link(f, w[i], b);
        return;
      }
      link(f, w[i], new_coset());
      process_deductions();
      c = rep(c);
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      const auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      for (const auto& [r, off] : by_column_[x]) {
        scan(c, relators_[r], off);
        if (!alive(c)) break;
      }
      if (!alive(c)) continue;
      const int d = entry(c, x);
      if (d < 0 || !alive(d)) continue;
      const int xi = inv(x);
      for (const auto& [r, off] : by_column_[xi]) {
        scan(d, relators_[r], off);
        if (!alive(d)) break;
      }
    }
  }

  void compact() {
    std::vector<int> label(rows(), kUndefined);
    int n = 0;
    for (int c = 0; c < rows(); ++c) {
      if (alive(c)) label[c] = n++;
    }
    std::vector<int> next(static_cast<std::size_t>(n) * cols_);
    for (int c = 0; c < rows(); ++c) {
      if (!alive(c)) continue;
      for (int x = 0; x < cols_; ++x) {
        const int d = entry(c, x);
        next[static_cast<std::size_t>(label[c]) * cols_ + x] = d < 0 ? kUndefined : label[d];
      }
    }
    table_ = std::move(next);
    parent_.assign(n, -1);
  }

  CosetTable standardized() {
    compact();
    CosetTable raw(alphabet_, rows(), table_);
    return raw.rebased(0);
  }
};

}  // namespace

CosetTable coset_enumeration(const Presentation& pres, const std::vector<Word>& subgroup,
                             std::size_t max_cosets) {
  return Enumerator(pres, subgroup, max_cosets).run();
}

std::vector<int> word_action(const CosetTable& t, const Word& w) {
  std::vector<int> perm(t.size());
  for (int i = 0; i < t.size(); ++i) perm[i] = t.act(i, w);
  return perm;
}

bool is_fixed_point_free(const CosetTable& t, const Word& w) {
  for (int i = 0; i < t.size(); ++i) {
    if (t.act(i, w) == i) return false;
  }
  return true;
}

bool parity_orientable(const CosetTable& t) {
  std::vector<int> side(t.size(), -1);
  std::vector<int> queue{0};
  side[0] = 0;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const int i = queue[k];
    for (int c = 0; c < t.columns(); ++c) {
      const int d = t.at(i, c);
      if (side[d] < 0) {
        side[d] = 1 - side[i];
        queue.push_back(d);
      } else if (side[d] == side[i]) {
        return false;
      }
    }
  }
  return true;
}

SchreierData schreier_data(const CosetTable& t, const Presentation& pres) {
  const Alphabet& a = t.alphabet();
  const int n = t.size();
  const int cols = a.size();
  SchreierData out;
  out.representatives.assign(n, Word{});
  out.edge_letter.assign(static_cast<std::size_t>(n) * cols, 0);

  // Breadth-first tree; tree edges get letter 0.
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  std::vector<char> tree(static_cast<std::size_t>(n) * cols, 0);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const int i = queue[k];
    for (int c = 0; c < cols; ++c) {
      const int d = t.at(i, c);
      if (seen[d]) continue;
      seen[d] = 1;
      out.representatives[d] = out.representatives[i];
      out.representatives[d].push_back(a.letter(c));
      tree[static_cast<std::size_t>(i) * cols + c] = 1;
      tree[static_cast<std::size_t>(d) * cols + a.inverse_column(c)] = 1;
      queue.push_back(d);
    }
  }

  // Each undirected edge gets one generator, oriented along its positive
  // letter; involution edges i -- j are oriented from min(i, j).
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t idx = static_cast<std::size_t>(i) * cols + c;
      if (tree[idx] || out.edge_letter[idx] != 0) continue;
      const Letter l = a.letter(c);
      if (l < 0) continue;
      const int d = t.at(i, c);
      if (a.is_involution_column(c) && d < i) continue;
      Word g = out.representatives[i];
      g.push_back(l);
      const Word back = pres.inverse(out.representatives[d]);
      g.insert(g.end(), back.begin(), back.end());
      out.generators.push_back(pres.free_reduce(g));
      const int id = static_cast<int>(out.generators.size());
      out.edge_letter[idx] = id;
      const std::size_t rev = static_cast<std::size_t>(d) * cols + a.inverse_column(c);
      if (rev != idx) out.edge_letter[rev] = -id;
    }
  }
  return out;
}

std::vector<Word> schreier_generators(const CosetTable& t, const Presentation& pres) {
  return schreier_data(t, pres).generators;
}

int orbit_count(const CosetTable& t, const std::vector<Word>& gens) {
  std::vector<int> parent(t.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int orbits = t.size();
  for (const Word& g : gens) {
    for (int i = 0; i < t.size(); ++i) {
      const int a = find(i);
      const int b = find(t.act(i, g));
      if (a != b) {
        parent[b] = a;
        --orbits;
      }
    }
  }
  return orbits;
}

}  // namespace census
