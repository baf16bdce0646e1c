#ifndef SCLKIT_PAIR_HPP
#define SCLKIT_PAIR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sclkit/rational.hpp"
#include "sclkit/word.hpp"

namespace sclkit {

/// How the quotient Gamma = G/N is presented.
struct QuotientSpec {
  enum class Kind { Trivial, FreeAbelian, Finite };
  Kind kind = Kind::Trivial;

  // FreeAbelian: abelian_images[i] is the image of generator i+1 in Z^k.
  std::vector<std::vector<long>> abelian_images;
  // FreeAbelian, optional: words lifting the standard basis of Z^k; validated
  // against p and used as the section.
  std::vector<std::string> section_lifts;

  // Finite: perm_images[i] is the image of generator i+1 as a permutation of
  // {0, .., degree-1} (image list).
  std::vector<std::vector<int>> perm_images;
  // Finite, alternative presentation: an explicit multiplication table
  // (validated for associativity, identity at index 0, and inverses) plus the
  // element index of each generator image.
  std::vector<std::vector<int>> table;
  std::vector<int> table_images;

  static QuotientSpec trivial() { return {}; }
  static QuotientSpec free_abelian(std::vector<std::vector<long>> images,
                                   std::vector<std::string> lifts = {});
  static QuotientSpec finite_perm(std::vector<std::vector<int>> images);
  static QuotientSpec finite_table(std::vector<std::vector<int>> table, std::vector<int> images);
};

/// Image of a word under the quotient map. Exactly one representation is
/// active, matching the quotient kind.
struct QuotientElem {
  std::vector<long> vec;  // free-abelian
  int index = 0;          // finite: index into the enumerated group
  bool is_identity = false;
};

class FiniteQuotient;
struct MixedClassData;

/// Element class in N/[G,N] (finite quotients only). Zero iff the element
/// lies in the mixed commutator subgroup.
struct MixedClass {
  std::vector<BigInt> canon;  // canonical residues in the Smith basis
  bool is_zero() const;
  bool operator==(const MixedClass& o) const { return canon == o.canon; }
  std::string str() const;
};

enum class Membership { Yes, No, Unknown };

class Chain1;
class Chain2;

struct MembershipReport {
  Membership status = Membership::Unknown;
  std::string detail;
  std::optional<MixedClass> obstruction;
};

/// A pair (G, N): free G together with the quotient homomorphism p whose
/// kernel is N. Immutable after construction; safe to share across threads.
class GroupPair {
 public:
  GroupPair(Alphabet alphabet, QuotientSpec spec);

  const Alphabet& alphabet() const { return alphabet_; }
  const QuotientSpec& spec() const { return spec_; }
  QuotientSpec::Kind kind() const { return spec_.kind; }
  bool n_equals_g() const { return spec_.kind == QuotientSpec::Kind::Trivial; }

  QuotientElem image_in_quotient(const Word& g) const;
  bool in_N(const Word& g) const;

  /// Finite quotients: number of cosets, coset representatives (BFS shortest
  /// words; reps()[0] is the empty word for the trivial coset), and the
  /// representative of a word's coset.
  int quotient_order() const;
  const std::vector<Word>& reps() const;
  const Word& rep_of(const Word& g) const;
  int finite_index_of(const Word& g) const;
  /// Order of p(g) in the finite quotient.
  int finite_element_order(const Word& g) const;

  /// Rank of N as a free group on the Schreier generators (finite quotients).
  int schreier_rank() const;
  /// Word of g in the Schreier generators of N. Throws if g is not in N.
  Word rewrite_in_N(const Word& g) const;
  /// Expresses Schreier generator i (1-based) as a word in G.
  Word schreier_generator(int i) const;

  /// Class of y in N/[G,N]; finite quotients only, y must lie in N.
  MixedClass mixed_class(const Word& y) const;
  MixedClass mixed_class_zero() const;
  /// Invariant factors of N/[G,N] (0 denotes a free factor).
  std::vector<BigInt> mixed_class_invariants() const;

  /// Membership of an integral chain in the domain of the mixed scl
  /// machinery: support in N and the signed product in [G,N].
  MembershipReport membership_status(const Chain1& c,
                                     const Chain2* witness = nullptr) const;

  /// User-supplied coset representatives (validated) override the BFS ones.
  void override_reps(std::vector<Word> reps);

  /// Free-abelian quotients: a word mapping to the given vector.
  Word abelian_section(const std::vector<long>& v) const;

 private:
  Alphabet alphabet_;
  QuotientSpec spec_;
  std::shared_ptr<const FiniteQuotient> finite_;
  std::shared_ptr<const MixedClassData> mixed_;
  std::vector<Word> reps_;
  // free-abelian section: basis lifts, user-supplied or derived from the
  // Smith normal form of the image matrix
  std::vector<Word> section_words_;

  void build_finite();
  void build_abelian_section();
};

}  // namespace sclkit

#endif
