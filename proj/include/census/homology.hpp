#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "census/coset_table.hpp"
#include "census/low_index.hpp"
#include "census/presentation.hpp"

namespace census {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  mpz_class& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const mpz_class& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Nonzero invariant factors d1 | d2 | ... (positive) and the rank.
struct SmithForm {
  std::vector<mpz_class> factors;
  int rank = 0;
};

SmithForm smith_normal_form(IntegerMatrix m);

/// Z_t1 + ... + Z_tk + Z^free_rank with t1 | t2 | ... | tk and every ti >= 2.
struct AbelianInvariants {
  std::vector<std::int64_t> torsion;
  int free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  /// e.g. "Z2+Z4+Z", "Z^3", "0".
  std::string to_string() const;
  auto operator<=>(const AbelianInvariants&) const = default;
};

/// Normalizes any direct sum of cyclic groups (order 0 = Z, order 1 = trivial)
/// to invariant factors.
AbelianInvariants from_cyclic_factors(const std::vector<std::int64_t>& orders, int free_rank = 0);

/// Abelian group presented by the rows of `relations` over `cols` generators.
AbelianInvariants abelian_invariants(const IntegerMatrix& relations);

/// Exponent-sum matrix: one row per relator, one column per generator.
IntegerMatrix relation_matrix(const Presentation& pres);
AbelianInvariants abelianization(const Presentation& pres);

/// Reidemeister-Schreier: generators are the Schreier generators of `t`
/// (in schreier_data order), relators are every relator of `pres` rewritten
/// at every point, freely reduced, empty ones kept.
Presentation rewrite_subgroup_presentation(const Presentation& pres, const CosetTable& t);

/// Tietze simplification: drops trivial and duplicate relators and eliminates
/// generators occurring once in some relator while the total relator length
/// stays below `growth` times its starting value. Surviving generators keep
/// their order; `survivors` receives their 1-based input indices.
Presentation simplify_presentation(const Presentation& pres, double growth = 1.5,
                                   std::vector<int>* survivors = nullptr);

/// H1 of the base-point stabilizer; stores the simplified presentation of K
/// in the record.
AbelianInvariants h1_of(SubgroupRecord& rec, const Presentation& pres);

/// Five slots "abcde": torsion factors in chain order, zero padding, then the
/// free rank; entries above 9 in parentheses.
std::string format_h1(const AbelianInvariants& inv);

/// Reads the five-slot notation with any cyclic decomposition and normalizes
/// it, e.g. "3(16)000" -> Z48.
AbelianInvariants parse_h1(const std::string& text);

}  // namespace census
