#ifndef SCLKIT_COMMUTATOR_HPP
#define SCLKIT_COMMUTATOR_HPP

#include <memory>
#include <optional>
#include <vector>

#include "sclkit/chain.hpp"
#include "sclkit/pair.hpp"
#include "sclkit/word.hpp"

namespace sclkit {

/// A verified expression of a target as a product of simple (mixed)
/// commutators, with optional outer conjugators per chain term.
struct Decomposition {
  std::vector<CommutatorTerm> commutators;
  std::vector<Word> term_conjugators;  // for chain targets
  Word target;

  Word product() const;
  bool verify() const { return product() == target; }
};

/// Product of exactly n simple commutators equal to (g1 g2)^{-2n} g1^{2n}
/// g2^{2n}, by the inductive conjugation scheme.
Decomposition power_difference_decomposition(const Word& g1, const Word& g2, long n);

struct SearchBudget {
  int max_commutators = 2;
  int max_word_len = 4;
  int conjugator_len = 2;  // chain targets only
};

enum class SearchOutcome { Found, Unknown };

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Unknown;
  int commutator_count = 0;
  Decomposition decomposition;
};

namespace detail {
struct CommutatorTable;
}

/// Bounded iterative-deepening search for commutator decompositions. The
/// candidate table is built once per (pair, budget) and shared across
/// targets. Every hit is re-verified by exact reduction, so a Found result
/// certifies cl <= k; Unknown only reports budget exhaustion.
class CommutatorSearcher {
 public:
  CommutatorSearcher(GroupPair pair, SearchBudget budget);

  /// Mixed mode (N != G) requires in_N(y) and constrains each x to N.
  /// max_k, when nonnegative, further caps the commutator count.
  SearchResult search(const Word& y, int max_k = -1) const;

  /// Upper bound for the chain x_1 + ... + x_m: conjugators over bounded
  /// words, then the conjugated product is decomposed.
  SearchResult search_chain(const std::vector<Word>& xs) const;

  const SearchBudget& budget() const { return budget_; }

 private:
  GroupPair pair_;
  SearchBudget budget_;
  std::shared_ptr<const detail::CommutatorTable> table_;
};

SearchResult cl_upper_search(const GroupPair& pair, const Word& y, const SearchBudget& budget);
SearchResult cl_chain_upper(const GroupPair& pair, const std::vector<Word>& xs,
                            const SearchBudget& budget);

}  // namespace sclkit

#endif
