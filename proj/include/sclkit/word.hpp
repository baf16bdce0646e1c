#ifndef SCLKIT_WORD_HPP
#define SCLKIT_WORD_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sclkit {

/// A generator letter or its inverse. Nonzero; the sign encodes inversion,
/// so inverting is negation and comparing is integer comparison.
using Letter = std::int32_t;

/// Free group alphabet: generators are indexed 1..rank.
class Alphabet {
 public:
  explicit Alphabet(int rank);

  int rank() const { return rank_; }
  bool contains(Letter l) const { return l != 0 && l >= -rank_ && l <= rank_; }

  std::string letter_name(Letter l) const;

  bool operator==(const Alphabet& other) const { return rank_ == other.rank_; }

 private:
  int rank_;
};

/// Freely reduced word in a free group. Immutable value type; the empty
/// word is the group unit.
class Word {
 public:
  Word() = default;

  /// Reduces an arbitrary letter sequence. Throws std::invalid_argument if a
  /// letter is outside the alphabet.
  static Word reduce(const Alphabet& alphabet, std::span<const Letter> raw);
  static Word reduce(const Alphabet& alphabet, std::initializer_list<Letter> raw);

  /// Wraps a sequence that is already freely reduced (checked).
  static Word from_reduced(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  Letter at(int i) const { return letters_[static_cast<size_t>(i)]; }

  bool operator==(const Word& other) const { return letters_ == other.letters_; }
  bool operator!=(const Word& other) const { return letters_ != other.letters_; }

  /// Canonical order: by length, then lexicographic on letters.
  bool operator<(const Word& other) const;

 private:
  std::vector<Letter> letters_;
};

struct MulResult {
  Word product;
  int cancelled;  // length of the cancelled suffix/prefix block
};

MulResult multiply_full(const Word& g, const Word& h);
Word multiply(const Word& g, const Word& h);
Word inverse(const Word& g);
/// [g,x] = g x g^{-1} x^{-1}.
Word commutator(const Word& g, const Word& x);
Word power(const Word& g, long n);
Word conjugate(const Word& u, const Word& g);  // u g u^{-1}

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // g = conjugator * core * conjugator^{-1}
};
CyclicReduction cyclic_reduce(const Word& g);

bool is_reduced(std::span<const Letter> letters);
bool is_cyclically_reduced(const Word& g);

/// Exponent sum of each generator (index 0 = generator 1).
std::vector<long> abelianization(const Alphabet& alphabet, const Word& g);

/// Lexicographically minimal cyclic rotation of the cyclically reduced core.
/// Two words are conjugate iff their conjugacy keys are equal... for free
/// groups this holds, and it is what the commutator search canonicalizes on.
Word conjugacy_key(const Word& g);

/// Text syntax: 'a'..'z' generators, 'A'..'Z' inverses, or x1, x2, ...;
/// '^n' exponents (n possibly negative), parentheses, '[u,v]' commutators,
/// 'e' for the empty word.
Word parse_word(const Alphabet& alphabet, const std::string& text);
std::string format_word(const Alphabet& alphabet, const Word& g);

/// All reduced words of length <= max_len, in canonical order.
std::vector<Word> enumerate_words(const Alphabet& alphabet, int max_len);

// Low-level kernels on raw letter buffers (no allocation); dst must have room
// for na + nb letters. Used by the hot enumeration loops.
namespace kernel {
int reduce_into(const Letter* src, int n, Letter* dst);
int concat_reduce(const Letter* a, int na, const Letter* b, int nb, Letter* dst);
int count_occurrences(const Letter* w, int nw, const Letter* g, int ng);
}  // namespace kernel

}  // namespace sclkit

#endif
