#include "census/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "census/coset_table.hpp"
#include "census/errors.hpp"
#include "census/finite_group.hpp"

namespace census {

int CoxeterSymbol::label(int i, int j) const {
  if (i == j) return 1;
  if (i > j) std::swap(i, j);
  if (j - i != 1) return 2;
  return i == 1 ? p : (i == 2 ? q : r);
}

std::string CoxeterSymbol::to_string() const {
  return std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r);
}

CoxeterSymbol CoxeterSymbol::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != '{' && c != '}' && c != ' ') s += c;
  }
  std::vector<int> labels;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      labels.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InvalidArgument("trailing characters");
    } catch (const std::exception&) {
      throw InvalidArgument("malformed Coxeter symbol '" + text + "'");
    }
  }
  if (labels.size() != 3) throw InvalidArgument("Coxeter symbol needs three labels: '" + text + "'");
  for (int l : labels) {
    if (l < 2) throw InvalidArgument("Coxeter labels must be at least 2: '" + text + "'");
  }
  return {labels[0], labels[1], labels[2]};
}

std::string to_string(GeometryClass g) {
  switch (g) {
    case GeometryClass::Spherical: return "spherical";
    case GeometryClass::Euclidean: return "euclidean";
    case GeometryClass::HyperbolicCompact: return "hyperbolic-compact";
    case GeometryClass::HyperbolicNoncompact: return "hyperbolic-noncompact";
    case GeometryClass::NotListed: return "not-listed";
  }
  return "?";
}

namespace {

const std::vector<CoxeterSymbol> kSpherical{{3, 3, 3}, {4, 3, 3}, {3, 4, 3}, {3, 3, 5}};
const std::vector<CoxeterSymbol> kEuclidean{{4, 3, 4}};
const std::vector<CoxeterSymbol> kCompact{{4, 3, 5}, {3, 5, 3}, {5, 3, 5}};
const std::vector<CoxeterSymbol> kNoncompact{{4, 4, 3}, {4, 3, 6}, {5, 3, 6}, {3, 3, 6},
                                             {3, 6, 3}, {4, 4, 4}, {6, 3, 6}};

bool contains(const std::vector<CoxeterSymbol>& list, const CoxeterSymbol& s) {
  return std::find(list.begin(), list.end(), s) != list.end() ||
         std::find(list.begin(), list.end(), s.reversed()) != list.end();
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Word power(const Word& w, int k) {
  Word out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

// Finite irreducible linear diagram on consecutive nodes with these labels.
bool linear_run_finite(const std::vector<int>& labels) {
  switch (labels.size()) {
    case 0:
    case 1: return true;
    case 2: {
      const int a = labels[0];
      const int b = labels[1];
      return 2 * (a + b) > a * b;
    }
    case 3: return classify_geometry({labels[0], labels[1], labels[2]}) == GeometryClass::Spherical;
    default: return false;
  }
}

}  // namespace

const std::vector<CoxeterSymbol>& listed_symbols() {
  static const std::vector<CoxeterSymbol> all = [] {
    std::vector<CoxeterSymbol> v;
    for (const auto* list : {&kSpherical, &kEuclidean, &kCompact, &kNoncompact}) {
      v.insert(v.end(), list->begin(), list->end());
    }
    return v;
  }();
  return all;
}

GeometryClass classify_geometry(const CoxeterSymbol& sym) {
  if (contains(kSpherical, sym)) return GeometryClass::Spherical;
  if (contains(kEuclidean, sym)) return GeometryClass::Euclidean;
  if (contains(kCompact, sym)) return GeometryClass::HyperbolicCompact;
  if (contains(kNoncompact, sym)) return GeometryClass::HyperbolicNoncompact;
  return GeometryClass::NotListed;
}

Presentation coxeter_presentation(const std::vector<std::vector<int>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  Presentation pres(std::vector<bool>(n, true), {});
  for (int i = 1; i <= n; ++i) pres.relators.push_back({i, i});
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const int m = matrix[i - 1][j - 1];
      if (m > 0) pres.relators.push_back(power({i, j}, m));
    }
  }
  return pres;
}

Presentation presentation(const CoxeterSymbol& sym) {
  std::vector<std::vector<int>> m(4, std::vector<int>(4));
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) m[i - 1][j - 1] = sym.label(i, j);
  }
  return coxeter_presentation(m);
}

std::vector<Word> ParabolicDescriptor::generators() const {
  std::vector<Word> out;
  for (int n : nodes) out.push_back({n});
  return out;
}

bool parabolic_is_finite(const CoxeterSymbol& sym, const std::vector<int>& nodes) {
  std::vector<int> run;
  int prev = -10;
  bool finite = true;
  auto close_run = [&] {
    std::vector<int> labels;
    for (std::size_t k = 1; k < run.size(); ++k) labels.push_back(sym.label(run[k - 1], run[k]));
    finite = finite && linear_run_finite(labels);
    run.clear();
  };
  for (int n : nodes) {
    if (n != prev + 1 && !run.empty()) close_run();
    run.push_back(n);
    prev = n;
  }
  if (!run.empty()) close_run();
  return finite;
}

ParabolicDescriptor standard_parabolic(const CoxeterSymbol& sym, std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (int n : nodes) {
    if (n < 1 || n > 4) throw InvalidArgument("parabolic node outside 1..4");
  }
  ParabolicDescriptor d;
  d.nodes = nodes;
  std::vector<std::vector<int>> m(nodes.size(), std::vector<int>(nodes.size()));
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = 0; b < nodes.size(); ++b) m[a][b] = sym.label(nodes[a], nodes[b]);
  }
  d.presentation = coxeter_presentation(m);
  d.finite = parabolic_is_finite(sym, nodes);
  if (d.finite) d.order = static_cast<std::size_t>(coset_enumeration(d.presentation, {}).size());
  return d;
}

std::vector<Word> TorsionSet::words() const {
  std::vector<Word> out;
  for (const auto& e : entries) out.push_back(e.word);
  return out;
}

TorsionSet torsion_representatives(const CoxeterSymbol& sym) {
  TorsionSet ts;
  for (int i = 1; i <= 4; ++i) ts.entries.push_back({{i}, 2, std::nullopt});
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      const int m = sym.label(i, j);
      for (int s = 2; s <= m; ++s) {
        if (m % s == 0 && is_prime(s)) ts.entries.push_back({power({i, j}, m / s), s, std::nullopt});
      }
    }
  }
  return ts;
}

TorsionSet spherical_fixed_point_annotation(const CoxeterSymbol& sym, TorsionSet ts) {
  if (classify_geometry(sym) != GeometryClass::Spherical) {
    throw InvalidArgument("fixed-point annotation needs a spherical symbol, got " + sym.to_string());
  }
  const Presentation pres = presentation(sym);
  const FiniteGroup group(pres);
  std::vector<CosetTable> maximal;
  for (int drop = 1; drop <= 4; ++drop) {
    std::vector<Word> gens;
    for (int n = 1; n <= 4; ++n) {
      if (n != drop) gens.push_back({n});
    }
    maximal.push_back(coset_enumeration(pres, gens));
  }
  auto fixes_something = [&](const Word& w) {
    return std::any_of(maximal.begin(), maximal.end(),
                       [&](const CosetTable& t) { return !is_fixed_point_free(t, w); });
  };

  const auto& classes = group.conjugacy_classes();
  std::set<int> covered;
  for (const auto& e : ts.entries) covered.insert(classes[group.element(e.word)]);
  for (int e = 1; e < static_cast<int>(group.order()); ++e) {
    if (classes[e] != e || covered.count(e)) continue;
    const int ord = group.element_order(e);
    if (!is_prime(ord)) continue;
    ts.entries.push_back({group.word(e), ord, std::nullopt});
    covered.insert(e);
  }
  for (auto& e : ts.entries) e.has_fixed_point_on_sphere = fixes_something(e.word);
  return ts;
}

TorsionSet parabolic_torsion_closure(const CoxeterSymbol& sym, TorsionSet ts) {
  std::set<Word> have;
  for (const auto& e : ts.entries) have.insert(e.word);
  for (int drop = 1; drop <= 4; ++drop) {
    std::vector<int> nodes;
    for (int n = 1; n <= 4; ++n) {
      if (n != drop) nodes.push_back(n);
    }
    if (!parabolic_is_finite(sym, nodes)) continue;
    const auto par = standard_parabolic(sym, nodes);
    const FiniteGroup group(par.presentation);
    const auto& classes = group.conjugacy_classes();
    for (int e = 1; e < static_cast<int>(group.order()); ++e) {
      if (classes[e] != e) continue;
      const int ord = group.element_order(e);
      if (!is_prime(ord)) continue;
      Word w;
      for (Letter l : group.word(e)) w.push_back(nodes[l - 1]);
      if (have.insert(w).second) ts.entries.push_back({w, ord, std::nullopt});
    }
  }
  return ts;
}

std::array<double, 16> reflection_matrix(const CoxeterSymbol& sym, const Word& w) {
  double gram[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) gram[i][j] = -std::cos(std::numbers::pi / sym.label(i + 1, j + 1));
  }
  std::array<double, 16> m{};
  for (int i = 0; i < 4; ++i) m[i * 4 + i] = 1.0;
  for (Letter l : w) {
    const int g = std::abs(l) - 1;
    // right-multiply by s_g = I - 2 e_g B_g.
    std::array<double, 16> next = m;
    for (int row = 0; row < 4; ++row) {
      for (int col = 0; col < 4; ++col) next[row * 4 + col] -= 2.0 * m[row * 4 + g] * gram[g][col];
    }
    m = next;
  }
  return m;
}

bool has_eigenvalue_one(const std::array<double, 16>& m, double tol) {
  double a[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a[i][j] = m[i * 4 + j] - (i == j ? 1.0 : 0.0);
  }
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    }
    if (std::fabs(a[piv][c]) < 1e-300) return true;
    if (piv != c) {
      for (int k = 0; k < 4; ++k) std::swap(a[piv][k], a[c][k]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return std::fabs(det) < tol;
}

std::string SolidDescriptor::name() const {
  const int r = polygon_sides;
  const int q = vertex_valence;
  if (r == 3 && q == 3) return "tetrahedron";
  if (r == 4 && q == 3) return "cube";
  if (r == 3 && q == 4) return "octahedron";
  if (r == 5 && q == 3) return "dodecahedron";
  if (r == 3 && q == 5) return "icosahedron";
  return "polytope";
}

std::string SolidDescriptor::key() const {
  return symbol.to_string() + (node == Node::Left ? ":left" : ":right");
}

namespace {

struct PlatonicType {
  int sides, valence, faces, edges, vertices;
  std::size_t symmetries;
};

constexpr PlatonicType kPlatonic[] = {
    {3, 3, 4, 6, 4, 24},   {4, 3, 6, 12, 8, 48},    {3, 4, 8, 12, 6, 48},
    {5, 3, 12, 30, 20, 120}, {3, 5, 20, 30, 12, 120},
};

}  // namespace

SolidDescriptor make_solid(const CoxeterSymbol& sym, Node node) {
  SolidDescriptor s;
  s.symbol = sym;
  s.node = node;
  s.geometry = classify_geometry(sym);
  if (s.geometry == GeometryClass::NotListed) {
    throw InvalidArgument("symbol " + sym.to_string() + " is not a finite-volume simplex symbol");
  }
  s.oriented = node == Node::Left ? sym : sym.reversed();
  s.center_stabilizer = standard_parabolic(s.oriented, {2, 3, 4});
  if (!s.center_stabilizer.finite) {
    throw InvalidArgument("no solid at the " + std::string(node == Node::Left ? "left" : "right") +
                          " node of " + sym.to_string() + ": its centre stabilizer is infinite");
  }
  s.dihedral_denominator = s.oriented.p;
  s.vertex_valence = s.oriented.q;
  s.polygon_sides = s.oriented.r;
  s.compact = parabolic_is_finite(s.oriented, {1, 2, 3});

  // Cells of the solid are orbits of the cell stabilizers inside the centre
  // stabilizer; its local generators 1,2,3 are x2,x3,x4.
  const CosetTable regular = coset_enumeration(s.center_stabilizer.presentation, {});
  s.faces = orbit_count(regular, {{2}, {3}});
  s.edges = orbit_count(regular, {{1}, {3}});
  s.vertices = orbit_count(regular, {{1}, {2}});

  const auto* type = std::find_if(std::begin(kPlatonic), std::end(kPlatonic), [&](const PlatonicType& t) {
    return t.sides == s.polygon_sides && t.valence == s.vertex_valence;
  });
  if (type == std::end(kPlatonic) || type->faces != s.faces || type->edges != s.edges ||
      type->vertices != s.vertices || type->symmetries != s.symmetry_order()) {
    throw std::logic_error("cell counts of " + s.key() + " disagree with its Platonic type");
  }
  return s;
}

SolidDescriptor parse_solid(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("solid must be written p,q,r:left|right");
  const std::string end = text.substr(colon + 1);
  Node node;
  if (end == "left") {
    node = Node::Left;
  } else if (end == "right") {
    node = Node::Right;
  } else {
    throw InvalidArgument("solid node must be 'left' or 'right', got '" + end + "'");
  }
  return make_solid(CoxeterSymbol::parse(text.substr(0, colon)), node);
}

std::vector<SolidDescriptor> enumerate_solids(const CoxeterSymbol& sym) {
  if (classify_geometry(sym) == GeometryClass::NotListed) {
    throw InvalidArgument("symbol " + sym.to_string() + " is not listed");
  }
  std::vector<SolidDescriptor> out;
  if (parabolic_is_finite(sym, {2, 3, 4})) out.push_back(make_solid(sym, Node::Left));
  if (!sym.palindromic() && parabolic_is_finite(sym.reversed(), {2, 3, 4})) {
    out.push_back(make_solid(sym, Node::Right));
  }
  return out;
}

std::vector<SolidDescriptor> solid_inventory() {
  std::vector<SolidDescriptor> out;
  for (const auto& sym : listed_symbols()) {
    for (auto& s : enumerate_solids(sym)) out.push_back(std::move(s));
  }
  return out;
}

bool edge_divisibility_filter(const SolidDescriptor& solid) {
  return solid.edges % solid.dihedral_denominator == 0;
}

}  // namespace census
