#ifndef SCLKIT_CHAIN_HPP
#define SCLKIT_CHAIN_HPP

#include <map>
#include <utility>
#include <vector>

#include "sclkit/pair.hpp"
#include "sclkit/rational.hpp"
#include "sclkit/word.hpp"

namespace sclkit {

/// Formal rational combination of group elements. Zero coefficients are never
/// stored; keys are reduced words in canonical order.
class Chain1 {
 public:
  Chain1() = default;

  void add(const Rational& coeff, const Word& g);
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Word& g) const;
  bool is_integral() const;

  Chain1 operator+(const Chain1& o) const;
  Chain1 operator-(const Chain1& o) const;
  Chain1 operator*(const Rational& q) const;
  bool operator==(const Chain1& o) const { return terms_ == o.terms_; }

 private:
  std::map<Word, Rational> terms_;
};

using Pair2 = std::pair<Word, Word>;

/// Formal rational combination of ordered pairs (g1, g2).
class Chain2 {
 public:
  Chain2() = default;

  void add(const Rational& coeff, const Word& g1, const Word& g2);
  void add(const Rational& coeff, const Pair2& p);
  const std::map<Pair2, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Chain2 operator+(const Chain2& o) const;
  Chain2 operator*(const Rational& q) const;
  bool operator==(const Chain2& o) const { return terms_ == o.terms_; }

 private:
  std::map<Pair2, Rational> terms_;
};

/// Linear extension of d(g1, g2) = g2 - g1*g2 + g1.
Chain1 boundary(const Chain2& c);
Chain1 boundary_pair(const Word& g1, const Word& g2);

Rational l1_norm(const Chain1& c);
Rational l1_norm(const Chain2& c);

/// True iff every support pair has a coordinate in N.
bool is_prime_support(const GroupPair& pair, const Chain2& c);
bool is_prime_pair(const GroupPair& pair, const Word& g1, const Word& g2);

/// Replaces each support element x by x^n, keeping coefficients. Requires an
/// integral chain.
Chain1 chain_power(const Chain1& c, long n);

/// Rewrites negative terms -q*x as +q*x^{-1}; used only on the scl side.
Chain1 normalize_signs(const Chain1& c);

/// Number of unit terms counting multiplicity (the l1 norm of an integral
/// chain), the k+l constant of the filling-norm stabilization.
long term_count(const Chain1& c);

/// One mixed commutator [g, x] with an outer conjugator c, so the chain term
/// contributes c [g, x] c^{-1} to the product.
struct CommutatorTerm {
  Word g;
  Word x;           // must lie in N
  Word conjugator;  // may be empty
};

struct WitnessChain {
  Chain2 chain;
  Word product;  // the reduced product the chain's boundary equals (as a
                 // one-term chain), or the chain target for splittings
};

/// Prime-support 2-chain w with boundary(w) = y where y is the reduced
/// product of the conjugated commutators; l1_norm(w) <= 4k - 1 for k >= 1.
WitnessChain witness_chain2(const GroupPair& pair, const std::vector<CommutatorTerm>& decomposition);

/// Prime-support 2-chain whose boundary is sum_i x_i - (product of the
/// conjugated x_i) as chains. Entries of x_list must lie in N.
WitnessChain split_product_witness(const GroupPair& pair, const std::vector<Word>& x_list,
                                   const std::vector<Word>& conjugators);

/// Text form "coeff * word" lists; see config_io for file parsing.
std::string format_chain(const Alphabet& alphabet, const Chain1& c);

}  // namespace sclkit

#endif
