#include "census/manifold.hpp"

#include <algorithm>
#include <map>

#include "census/errors.hpp"

namespace census {

CertificationContext::CertificationContext(const SolidDescriptor& solid)
    : cells_(solid), pres_(census::presentation(solid.oriented)) {
  if (solid.geometry != GeometryClass::Spherical) return;
  group_.emplace(pres_);
  for (int drop = 1; drop <= 4; ++drop) {
    std::vector<Word> gens;
    for (int n = 1; n <= 4; ++n) {
      if (n != drop) gens.push_back({n});
    }
    maximal_.push_back(coset_enumeration(pres_, gens));
  }
}

std::vector<int> transversal_labels(const CellIndexing& cells, const CosetTable& t) {
  const int m = cells.order();
  if (t.size() != m) return {};
  std::vector<int> label(m, kUndefined);
  std::vector<int> point(m, kUndefined);
  point[0] = 0;
  label[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const int g = queue[k];
    for (int x = 2; x <= 4; ++x) {
      const int h = cells.right(g, x);
      const int q = t.act(point[g], x);
      if (point[h] == kUndefined) {
        if (label[q] != kUndefined) return {};
        point[h] = q;
        label[q] = h;
        queue.push_back(h);
      } else if (point[h] != q) {
        return {};
      }
    }
  }
  if (std::find(label.begin(), label.end(), kUndefined) != label.end()) return {};
  return label;
}

bool verify_transversal(const CellIndexing& cells, const SubgroupRecord& rec) {
  return rec.table.complete() && !transversal_labels(cells, rec.table).empty();
}

namespace {

// sigma(g): the chamber whose point is point(g) . x1.
std::vector<int> pairing_map(const CellIndexing& cells, const CosetTable& t) {
  const auto label = transversal_labels(cells, t);
  if (label.empty()) throw CertificationFailure("transversal", "centre stabilizer is not a transversal for K");
  std::vector<int> point(cells.order());
  for (int q = 0; q < cells.order(); ++q) point[label[q]] = q;
  std::vector<int> sigma(cells.order());
  for (int g = 0; g < cells.order(); ++g) sigma[g] = label[t.act(point[g], 1)];
  return sigma;
}

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

SidePairing side_pairings(const CellIndexing& cells, const SubgroupRecord& rec) {
  const auto sigma = pairing_map(cells, rec.table);
  const SolidDescriptor& solid = cells.solid();
  SidePairing sp;
  sp.partner.assign(cells.face_count(), kUndefined);
  for (int s = 0; s < cells.face_count(); ++s) {
    const int rep = cells.face_cosets()[s];
    const int image = sigma[rep];
    sp.partner[s] = cells.face(image);
    for (int h : cells.face_stabilizer()) {
      const int g = cells.multiply(rep, h);
      if (sigma[g] != cells.multiply(image, h)) {
        throw CertificationFailure("side-pairing", "pairing of face " + std::to_string(s + 1) +
                                                       " is not an isometry of faces");
      }
      // gamma_S would lie in the finite stabilizer of an edge or vertex.
      const int rel = cells.multiply(cells.inverse(g), sigma[g]);
      const Word w = cells.ambient_word(rel);
      const bool edge_fix = std::all_of(w.begin(), w.end(), [](Letter l) { return l == 2 || l == 4; });
      const bool vertex_fix = std::all_of(w.begin(), w.end(), [](Letter l) { return l == 2 || l == 3; });
      if (edge_fix || (solid.compact && vertex_fix)) {
        throw CertificationFailure("fixed-point", "gamma_" + std::to_string(s + 1) + " fixes a point of its face");
      }
    }
    Word gamma = cells.ambient_word(rep);
    gamma.push_back(1);
    const Word back = reversed(cells.ambient_word(image));
    gamma.insert(gamma.end(), back.begin(), back.end());
    if (rec.table.act(0, gamma) != 0) {
      throw CertificationFailure("side-pairing", "gamma_" + std::to_string(s + 1) + " is not in K");
    }
    sp.pairing_word.push_back(std::move(gamma));
  }
  for (int s = 0; s < cells.face_count(); ++s) {
    if (sp.partner[s] == s || sp.partner[sp.partner[s]] != s) {
      throw CertificationFailure("side-pairing", "faces are not paired off by an involution");
    }
  }
  return sp;
}

std::vector<EdgeCycle> edge_cycles(const CellIndexing& cells, const SubgroupRecord& rec, const SidePairing&) {
  const auto sigma = pairing_map(cells, rec.table);
  const int m = cells.order();
  const int p = cells.solid().dihedral_denominator;
  // +1 when the chamber's half-edge runs to the higher-numbered vertex.
  auto sign = [&](int g) { return cells.vertex(g) > cells.vertex(cells.right(g, 4)) ? 1 : -1; };

  std::vector<int> edge_class(cells.edge_count(), kUndefined);
  std::vector<int> edge_sign(cells.edge_count(), 0);
  std::vector<EdgeCycle> cycles;
  std::vector<char> seen(m, 0);
  for (int g0 = 0; g0 < m; ++g0) {
    if (seen[g0]) continue;
    std::vector<int> orbit;
    for (int g = g0; !seen[g]; g = cells.right(sigma[g], 2)) {
      seen[g] = 1;
      orbit.push_back(g);
    }
    std::vector<int> edges;
    for (int g : orbit) edges.push_back(cells.edge(g));
    std::sort(edges.begin(), edges.end());
    if (static_cast<int>(orbit.size()) != p || std::unique(edges.begin(), edges.end()) != edges.end()) {
      throw CertificationFailure("edge-cycle", "edge class through edge " + std::to_string(cells.edge(g0) + 1) +
                                                   " does not have exactly " + std::to_string(p) + " edges");
    }
    const int cls = edge_class[cells.edge(g0)];
    if (cls == kUndefined) {
      const int id = static_cast<int>(cycles.size());
      for (int g : orbit) {
        if (edge_class[cells.edge(g)] != kUndefined) {
          throw CertificationFailure("edge-cycle", "edge classes overlap");
        }
        edge_class[cells.edge(g)] = id;
        edge_sign[cells.edge(g)] = sign(g) * sign(g0);
      }
      cycles.emplace_back();
      continue;
    }
    // Another orbit over a known class must agree on edges and orientations.
    const int flip = edge_sign[cells.edge(g0)] * sign(g0);
    for (int g : orbit) {
      if (edge_class[cells.edge(g)] != cls || edge_sign[cells.edge(g)] != sign(g) * flip) {
        throw CertificationFailure("edge-cycle", "inconsistent edge identifications");
      }
    }
  }
  for (int e = 0; e < cells.edge_count(); ++e) {
    auto& edges = cycles[edge_class[e]].edges;
    const int first = edges.empty() ? edge_sign[e] : edge_sign[edges.front().first];
    edges.emplace_back(e, edge_sign[e] * first);
  }
  return cycles;
}

namespace {

struct Identification {
  std::vector<int> face_partner;
  std::vector<int> edge_class;
  std::vector<int> edge_sign;  // relative to the least edge of its class
};

std::pair<std::string, std::string> encode(const Identification& id, int faces, int edges) {
  std::string fi(faces, '?');
  char next = 'a';
  for (int f = 0; f < faces; ++f) {
    if (fi[f] != '?') continue;
    fi[f] = next;
    fi[id.face_partner[f]] = next;
    ++next;
  }
  std::map<int, char> letter;
  std::string ei;
  for (int e = 0; e < edges; ++e) {
    const int cls = id.edge_class[e];
    auto it = letter.find(cls);
    if (it != letter.end()) {
      ei += it->second;
      continue;
    }
    const char l = static_cast<char>('a' + letter.size());
    letter[cls] = l;
    ei += l;
    ei += '(';
    for (int f = e + 1; f < edges; ++f) {
      if (id.edge_class[f] == cls) ei += id.edge_sign[f] * id.edge_sign[e] > 0 ? '+' : '-';
    }
    ei += ')';
  }
  return {fi, ei};
}

Identification parse_identification(const std::string& fi, const std::string& ei, int faces, int edges) {
  Identification id;
  if (static_cast<int>(fi.size()) != faces) throw InvalidArgument("FI string has the wrong length");
  id.face_partner.assign(faces, kUndefined);
  for (int f = 0; f < faces; ++f) {
    int count = 0;
    for (int g = 0; g < faces; ++g) {
      if (g != f && fi[g] == fi[f]) {
        id.face_partner[f] = g;
        ++count;
      }
    }
    if (count != 1) throw InvalidArgument("FI letter '" + std::string(1, fi[f]) + "' does not occur twice");
  }
  std::map<char, int> cls;
  std::map<char, std::string> signs;
  for (std::size_t i = 0; i < ei.size(); ++i) {
    const char l = ei[i];
    if (l < 'a' || l > 'z') throw InvalidArgument("unexpected character in EI string");
    if (!cls.count(l)) {
      const int c = static_cast<int>(cls.size());
      cls[l] = c;
    }
    id.edge_class.push_back(cls[l]);
    if (i + 1 < ei.size() && ei[i + 1] == '(') {
      const std::size_t close = ei.find(')', i);
      if (close == std::string::npos) throw InvalidArgument("unbalanced EI string");
      signs[l] = ei.substr(i + 2, close - i - 2);
      i = close;
    }
  }
  if (static_cast<int>(id.edge_class.size()) != edges) throw InvalidArgument("EI string has the wrong length");
  id.edge_sign.assign(edges, 1);
  for (const auto& [l, c] : cls) {
    const std::string& s = signs[l];
    std::size_t k = 0;
    bool first = true;
    for (int e = 0; e < edges; ++e) {
      if (id.edge_class[e] != c) continue;
      if (first) {
        first = false;
        continue;
      }
      if (k >= s.size()) throw InvalidArgument("EI sign block too short for letter '" + std::string(1, l) + "'");
      id.edge_sign[e] = s[k++] == '+' ? 1 : -1;
    }
    if (k != s.size()) throw InvalidArgument("EI sign block too long for letter '" + std::string(1, l) + "'");
  }
  return id;
}

}  // namespace

std::pair<std::string, std::string> encode_fi_ei(const CellIndexing& cells, const SidePairing& sp,
                                                 const std::vector<EdgeCycle>& cycles) {
  Identification id;
  id.face_partner = sp.partner;
  id.edge_class.assign(cells.edge_count(), kUndefined);
  id.edge_sign.assign(cells.edge_count(), 1);
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    for (const auto& [e, s] : cycles[c].edges) {
      id.edge_class[e] = static_cast<int>(c);
      id.edge_sign[e] = s;
    }
  }
  return encode(id, cells.face_count(), cells.edge_count());
}

std::string canonical_identification_code(const CellIndexing& cells, const std::string& fi, const std::string& ei) {
  const int faces = cells.face_count();
  const int edges = cells.edge_count();
  const Identification id = parse_identification(fi, ei, faces, edges);
  std::pair<std::string, std::string> best;
  bool have = false;
  for (int b = 0; b < cells.order(); ++b) {
    Identification img;
    img.face_partner.assign(faces, 0);
    img.edge_class.assign(edges, 0);
    img.edge_sign.assign(edges, 1);
    std::vector<int> pf(faces);
    for (int f = 0; f < faces; ++f) pf[f] = cells.face(cells.multiply(b, cells.face_cosets()[f]));
    for (int f = 0; f < faces; ++f) img.face_partner[pf[f]] = pf[id.face_partner[f]];
    auto pv = [&](int v) { return cells.vertex(cells.multiply(b, cells.vertex_cosets()[v])); };
    for (int e = 0; e < edges; ++e) {
      const int g = cells.edge_cosets()[e];
      const int to = cells.edge(cells.multiply(b, g));
      const auto [u, w] = cells.edge_endpoints(e);
      const bool kept = (u < w) == (pv(u) < pv(w));
      img.edge_class[to] = id.edge_class[e];
      img.edge_sign[to] = id.edge_sign[e] * (kept ? 1 : -1);
    }
    auto code = encode(img, faces, edges);
    if (!have || code < best) {
      best = std::move(code);
      have = true;
    }
  }
  return best.first + "/" + best.second;
}

int cusp_count(const SolidDescriptor& solid, const SubgroupRecord& rec) {
  if (solid.compact) throw InvalidArgument("cusp count requested for the compact solid " + solid.key());
  return orbit_count(rec.table, {{1}, {2}, {3}});
}

namespace {

void certify_spherical(const CertificationContext& ctx, const SubgroupRecord& rec) {
  const FiniteGroup& group = *ctx.group();
  std::vector<int> gens;
  for (const Word& w : rec.schreier_generators) gens.push_back(group.element(w));
  const auto k = group.closure(gens);
  if (k.size() * static_cast<std::size_t>(rec.table.size()) != group.order()) {
    throw CertificationFailure("transversal", "|K| times the index differs from |Gamma|");
  }
  const CoxeterSymbol& sym = ctx.cells().solid().oriented;
  for (int e : k) {
    if (e == 0) continue;
    const Word& w = group.word(e);
    for (const CosetTable& t : ctx.maximal_parabolic_actions()) {
      if (!is_fixed_point_free(t, w)) {
        throw CertificationFailure("free-action", "element " + to_string(w) + " of K fixes a point of the sphere");
      }
    }
    if (has_eigenvalue_one(reflection_matrix(sym, w))) {
      throw CertificationFailure("free-action", "element " + to_string(w) + " of K has eigenvalue 1");
    }
  }
}

}  // namespace

ManifoldRecord certify(const CertificationContext& ctx, SubgroupRecord rec) {
  const CellIndexing& cells = ctx.cells();
  const SolidDescriptor& solid = cells.solid();
  if (!rec.table.complete() || !rec.table.relator_closed(ctx.presentation()) || !rec.table.transitive()) {
    throw CertificationFailure("coset-table", "table is not a complete transitive action");
  }
  if (!verify_transversal(cells, rec)) {
    throw CertificationFailure("transversal", "centre stabilizer is not a transversal for K");
  }
  if (!parity_orientable(rec.table)) {
    throw CertificationFailure("orientation", "K contains orientation-reversing elements");
  }
  ManifoldRecord out;
  out.solid = solid;
  out.pairing = side_pairings(cells, rec);
  out.cycles = edge_cycles(cells, rec, out.pairing);
  if (solid.geometry == GeometryClass::Spherical) certify_spherical(ctx, rec);
  std::tie(out.fi, out.ei) = encode_fi_ei(cells, out.pairing, out.cycles);
  out.code = canonical_identification_code(cells, out.fi, out.ei);
  out.cusp_count = solid.compact ? 0 : cusp_count(solid, rec);
  out.subgroup = std::move(rec);
  return out;
}

}  // namespace census
