#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "census/presentation.hpp"

namespace census {

/// Linear rank-4 Coxeter diagram  o-p-o-q-o-r-o  with generators x1..x4
/// numbered left to right.
struct CoxeterSymbol {
  int p = 3;
  int q = 3;
  int r = 3;

  /// m_ij for 1 <= i, j <= 4.
  int label(int i, int j) const;
  CoxeterSymbol reversed() const { return {r, q, p}; }
  bool palindromic() const { return p == r; }
  std::string to_string() const;

  /// Parses "p,q,r" (also accepts "{p,q,r}").
  static CoxeterSymbol parse(const std::string& text);

  auto operator<=>(const CoxeterSymbol&) const = default;
};

enum class GeometryClass { Spherical, Euclidean, HyperbolicCompact, HyperbolicNoncompact, NotListed };

std::string to_string(GeometryClass g);

/// The fifteen finite-volume simplex symbols, in the order they are
/// customarily listed (4 spherical, 1 Euclidean, 10 hyperbolic).
const std::vector<CoxeterSymbol>& listed_symbols();

/// A symbol and its reversal define the same group and classify alike.
GeometryClass classify_geometry(const CoxeterSymbol& sym);

/// Coxeter presentation from a symmetric matrix of labels (0 means infinity).
Presentation coxeter_presentation(const std::vector<std::vector<int>>& matrix);
Presentation presentation(const CoxeterSymbol& sym);

struct ParabolicDescriptor {
  std::vector<int> nodes;  // sorted subset of {1..4}
  Presentation presentation;  // generators renumbered 1..|nodes|
  bool finite = false;
  std::optional<std::size_t> order;

  /// Words over the ambient generators.
  std::vector<Word> generators() const;
};

/// Finiteness from the classical criterion; order by enumerating the
/// parabolic over its trivial subgroup.
ParabolicDescriptor standard_parabolic(const CoxeterSymbol& sym, std::vector<int> nodes);
bool parabolic_is_finite(const CoxeterSymbol& sym, const std::vector<int>& nodes);

struct TorsionEntry {
  Word word;
  int order = 2;  // prime
  std::optional<bool> has_fixed_point_on_sphere;
};

struct TorsionSet {
  std::vector<TorsionEntry> entries;
  std::vector<Word> words() const;
};

/// Generating reflections plus (x_i x_j)^(m/s) for each prime s dividing m_ij.
TorsionSet torsion_representatives(const CoxeterSymbol& sym);

/// For a spherical symbol: closes the set up to one entry per conjugacy class
/// of prime-order elements and marks which of them fix a point of S^3, i.e.
/// fix a coset of some maximal standard parabolic.
TorsionSet spherical_fixed_point_annotation(const CoxeterSymbol& sym, TorsionSet ts);

/// Adds representatives of every prime-order conjugacy class of each finite
/// maximal parabolic. Needed when orientation-reversing torsion matters.
TorsionSet parabolic_torsion_closure(const CoxeterSymbol& sym, TorsionSet ts);

/// Numerical cross-check: matrix of `w` in the geometric representation.
std::array<double, 16> reflection_matrix(const CoxeterSymbol& sym, const Word& w);
bool has_eigenvalue_one(const std::array<double, 16>& m, double tol = 1e-9);

enum class Node { Left, Right };

struct SolidDescriptor {
  CoxeterSymbol symbol;    // as addressed
  Node node = Node::Left;
  CoxeterSymbol oriented;  // symbol with the solid's centre at the left node
  GeometryClass geometry = GeometryClass::NotListed;
  int polygon_sides = 0;
  int vertex_valence = 0;
  int dihedral_denominator = 0;
  int faces = 0;
  int edges = 0;
  int vertices = 0;
  bool compact = true;
  ParabolicDescriptor center_stabilizer;

  std::string name() const;  // "cube", ...
  std::string key() const;   // "p,q,r:left"
  std::size_t symmetry_order() const { return *center_stabilizer.order; }
};

/// Builds the solid at one end of the symbol; throws if that end's rank-3
/// parabolic is infinite or the symbol is not listed.
SolidDescriptor make_solid(const CoxeterSymbol& sym, Node node);
/// Parses "p,q,r:left|right".
SolidDescriptor parse_solid(const std::string& text);

std::vector<SolidDescriptor> enumerate_solids(const CoxeterSymbol& sym);
/// All solids from all listed symbols.
std::vector<SolidDescriptor> solid_inventory();

/// True iff p divides the number of edges; false rules the solid out.
bool edge_divisibility_filter(const SolidDescriptor& solid);

}  // namespace census
