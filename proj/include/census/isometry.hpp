#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "census/coxeter.hpp"
#include "census/low_index.hpp"
#include "census/presentation.hpp"

namespace census {

/// a + b sqrt(d) over Q.
struct QuadraticNumber {
  mpq_class a;
  mpq_class b;
};

/// Exact geometric representation of a symbol whose labels need at most one
/// square root (cos(pi/m) for m in {2,3,4,5,6}).
class ExactReflectionRep {
 public:
  /// Throws InvalidArgument when the labels need two distinct square roots.
  explicit ExactReflectionRep(const CoxeterSymbol& sym);

  int radicand() const { return d_; }
  const Presentation& presentation() const { return pres_; }
  /// True iff the word in x1..x4 is the identity of the Coxeter group.
  bool is_identity(const Word& w) const;

 private:
  Presentation pres_;
  int d_ = 1;
  QuadraticNumber bilinear_[4][4];
};

/// K with a small generating set: the Tietze-surviving Schreier generators as
/// words in x1..x4 and the simplified relators over them.
struct SubgroupGenerators {
  std::vector<Word> generators;
  Presentation presentation;
};

SubgroupGenerators subgroup_generators(const Presentation& pres, const SubgroupRecord& rec);

/// Images of the generators of the source under a homomorphism onto the
/// target, each a word in x1..x4.
struct Epimorphism {
  std::vector<Word> images;
};

/// Epimorphisms both ways between two subgroups of one Coxeter group; since
/// both groups are finitely generated linear, hence Hopfian, this proves
/// them isomorphic.
struct IsomorphismCertificate {
  Epimorphism forward;
  Epimorphism backward;
};

/// Images lie in the target (they fix its base point), every relator of the
/// source maps to the identity (exactly), and the images have the target's
/// index in the Coxeter group.
bool verify_epimorphism(const ExactReflectionRep& exact, const SubgroupGenerators& source, const Epimorphism& epi,
                        const CosetTable& target_table);

/// Searches for an epimorphism source -> target that preserves traces in the
/// geometric representation, taking images among products of at most
/// `max_length` target generators.
std::optional<Epimorphism> find_epimorphism(const CoxeterSymbol& sym, const SubgroupGenerators& source,
                                            const SubgroupGenerators& target, const CosetTable& target_table,
                                            int max_length = 5);

/// Tries the diagram flip of a palindromic symbol first, then the trace
/// search. Nullopt when neither yields a certificate or the symbol's field is
/// not supported.
std::optional<IsomorphismCertificate> certify_isomorphism(const CoxeterSymbol& sym, const SubgroupRecord& a,
                                                          const SubgroupRecord& b, int max_length = 5);

}  // namespace census
