#ifndef SCLKIT_FINITE_QUOTIENT_HPP
#define SCLKIT_FINITE_QUOTIENT_HPP

// Internal machinery behind GroupPair for finite quotients: the enumerated
// permutation group, Schreier rewriting and the Smith normal form of the
// mixed coinvariant lattice. Not part of the public surface.

#include <deque>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sclkit/pair.hpp"

namespace sclkit {

/// The finite quotient as an enumerated permutation group with a full
/// multiplication table. Element 0 is the identity.
class FiniteQuotient {
 public:
  using Perm = std::vector<int>;

  FiniteQuotient(const std::vector<Perm>& gen_images, int rank);
  FiniteQuotient(const std::vector<std::vector<int>>& table, const std::vector<int>& gen_images);

  int order() const { return static_cast<int>(elements_.size()); }
  int mul(int i, int j) const { return mult_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  int inv(int i) const { return inv_[static_cast<size_t>(i)]; }
  int gen(int letter_index) const { return gen_index_[static_cast<size_t>(letter_index)]; }

  int image(const Word& w) const {
    int acc = 0;
    for (Letter l : w.letters()) {
      int gi = gen(std::abs(l) - 1);
      acc = mul(acc, l > 0 ? gi : inv(gi));
    }
    return acc;
  }

  int element_order(int i) const {
    int ord = 1, acc = i;
    while (acc != 0) {
      acc = mul(acc, i);
      ++ord;
    }
    return ord;
  }

 private:
  int push(const Perm& p);

  std::vector<Perm> elements_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  std::vector<int> gen_index_;
};

/// Schreier generators of N and the Smith form of N/[G,N].
struct MixedClassData {
  int schreier_rank = 0;
  // schreier_id[coset][gen-1]: 0 when the Schreier generator is trivial,
  // otherwise its 1-based index.
  std::vector<std::vector<int>> schreier_id;
  std::vector<Word> generator_words;  // in G, indexed by id-1

  // Smith data of the relation lattice (rows span the subgroup quotiented
  // out of N^{ab}).
  std::vector<BigInt> diag;                // nonzero invariant factors
  std::vector<std::vector<BigInt>> basis;  // right transform V
  std::vector<BigInt> invariants;          // torsion factors != 1, then 0 per free factor
};

namespace detail {

struct SmithResult {
  std::vector<BigInt> diag;               // nonzero invariant factors, d1 | d2 | ...
  std::vector<std::vector<BigInt>> left;  // U with D = U * M * V
  std::vector<std::vector<BigInt>> right; // V
};

SmithResult smith_normal_form(std::vector<std::vector<BigInt>> m, bool track_left,
                              bool track_right);

std::shared_ptr<const MixedClassData> build_mixed_class_data(const GroupPair& pair,
                                                             const FiniteQuotient& q,
                                                             const std::vector<Word>& reps);
Word schreier_rewrite(const GroupPair& pair, const FiniteQuotient& q, const MixedClassData& data,
                      const Word& g);
MixedClass class_of(const MixedClassData& data, const Word& rewritten);
MixedClass class_of_vector(const MixedClassData& data, const std::vector<BigInt>& v);
MixedClass zero_class(const MixedClassData& data);

}  // namespace detail
}  // namespace sclkit

#endif
