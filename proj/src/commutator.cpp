#include "sclkit/commutator.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sclkit {

Word Decomposition::product() const {
  Word acc;
  for (const CommutatorTerm& t : commutators) {
    Word c = commutator(t.g, t.x);
    acc = multiply(acc, t.conjugator.empty() ? c : conjugate(t.conjugator, c));
  }
  return acc;
}

Decomposition power_difference_decomposition(const Word& g1, const Word& g2, long n) {
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  Decomposition d;
  if (n == 1) {
    // (g1 g2)^{-2} g1^2 g2^2 = w [g1, g2] w^{-1} with w = (g1 g2)^{-2} g1
    Word w = multiply(power(multiply(g1, g2), -2), g1);
    d.commutators.push_back({conjugate(w, g1), conjugate(w, g2), Word()});
  } else {
    // peel one factor: conjugate the (n-1)-stage for (g2, g1) by g2^{-1} and
    // append the bridging commutator
    Decomposition prev = power_difference_decomposition(g2, g1, n - 1);
    Word u = inverse(g2);
    for (CommutatorTerm& t : prev.commutators)
      d.commutators.push_back({conjugate(u, t.g), conjugate(u, t.x), Word()});
    long m = n - 1;
    Word left = multiply(multiply(power(g1, -2 * m), power(g2, -2 * m)), inverse(g1));
    Word right = multiply(inverse(g2), power(g1, 2 * m));
    d.commutators.push_back({conjugate(u, left), conjugate(u, right), Word()});
  }
  d.target = multiply(multiply(power(multiply(g1, g2), -2 * n), power(g1, 2 * n)), power(g2, 2 * n));
  if (!d.verify()) throw std::logic_error("power-difference decomposition failed verification");
  return d;
}

namespace detail {

struct CommutatorTable {
  std::vector<std::pair<Word, Word>> pairs;  // (g, x)
  std::vector<Word> values;                  // commutator(g, x), aligned
  std::map<Word, int> first_of_value;        // value -> first pair index
};

}  // namespace detail

namespace {

using detail::CommutatorTable;

std::shared_ptr<const CommutatorTable> build_table(const GroupPair& pair, int max_len) {
  auto t = std::make_shared<CommutatorTable>();
  std::vector<Word> gs = enumerate_words(pair.alphabet(), max_len);
  std::vector<Word> xs;
  for (const Word& w : gs)
    if (pair.n_equals_g() || pair.in_N(w)) xs.push_back(w);
  for (const Word& g : gs)
    for (const Word& x : xs) {
      Word c = commutator(g, x);
      t->pairs.push_back({g, x});
      t->values.push_back(c);
      t->first_of_value.emplace(c, static_cast<int>(t->values.size()) - 1);
    }
  return t;
}

bool abelianization_vanishes(const Alphabet& a, const Word& w) {
  auto e = abelianization(a, w);
  return std::all_of(e.begin(), e.end(), [](long v) { return v == 0; });
}

// depth-first peeling: y = value(i) * rest
bool search_depth(const Alphabet& alphabet, const CommutatorTable& table, const Word& y, int depth,
                  std::vector<int>& picks) {
  if (depth == 0) return y.empty();
  if (depth == 1) {
    auto it = table.first_of_value.find(y);
    if (it == table.first_of_value.end()) return false;
    picks.push_back(it->second);
    return true;
  }
  for (size_t i = 0; i < table.values.size(); ++i) {
    Word rest = multiply(inverse(table.values[i]), y);
    if (!abelianization_vanishes(alphabet, rest)) continue;
    picks.push_back(static_cast<int>(i));
    if (search_depth(alphabet, table, rest, depth - 1, picks)) return true;
    picks.pop_back();
  }
  return false;
}

}  // namespace

CommutatorSearcher::CommutatorSearcher(GroupPair pair, SearchBudget budget)
    : pair_(std::move(pair)), budget_(budget), table_(build_table(pair_, budget.max_word_len)) {}

SearchResult CommutatorSearcher::search(const Word& y, int max_k) const {
  if (!pair_.n_equals_g() && !pair_.in_N(y))
    throw std::invalid_argument("mixed commutator length needs y in N");
  SearchResult res;
  if (!abelianization_vanishes(pair_.alphabet(), y)) return res;

  // cl is conjugation invariant: canonicalize by cyclic reduction
  CyclicReduction cr = cyclic_reduce(y);
  const Word& core = cr.core;
  if (core.empty()) {
    res.outcome = SearchOutcome::Found;
    res.commutator_count = 0;
    res.decomposition.target = y;
    return res;
  }
  const CommutatorTable& table = *table_;
  const Alphabet& alphabet = pair_.alphabet();
  int k_cap = budget_.max_commutators;
  if (max_k >= 0) k_cap = std::min(k_cap, max_k);
  // a product of k table entries reduces to length at most 4 k max_word_len
  int k_min = (core.length() + 4 * budget_.max_word_len - 1) / (4 * budget_.max_word_len);
  for (int k = std::max(1, k_min); k <= k_cap; ++k) {
    std::vector<int> picks;
    bool found = false;
    if (k == 1) {
      auto it = table.first_of_value.find(core);
      if (it != table.first_of_value.end()) {
        picks.push_back(it->second);
        found = true;
      }
    } else {
      // parallel over the first factor; the lowest-index hit wins, which is
      // schedule independent
      std::vector<std::vector<int>> hits;
#ifdef _OPENMP
#pragma omp parallel
      {
        std::vector<std::vector<int>> local_hits;
#pragma omp for schedule(dynamic, 64) nowait
        for (size_t i = 0; i < table.values.size(); ++i) {
          if (!local_hits.empty()) continue;
          Word rest = multiply(inverse(table.values[i]), core);
          if (!abelianization_vanishes(alphabet, rest)) continue;
          std::vector<int> local = {static_cast<int>(i)};
          if (search_depth(alphabet, table, rest, k - 1, local)) local_hits.push_back(local);
        }
#pragma omp critical
        for (auto& h : local_hits) hits.push_back(h);
      }
#else
      std::vector<int> local;
      if (search_depth(alphabet, table, core, k, local)) hits.push_back(local);
#endif
      if (!hits.empty()) {
        std::sort(hits.begin(), hits.end());
        picks = hits.front();
        found = true;
      }
    }
    if (found) {
      res.outcome = SearchOutcome::Found;
      res.commutator_count = k;
      for (int idx : picks) {
        const auto& [g, x] = table.pairs[static_cast<size_t>(idx)];
        res.decomposition.commutators.push_back(
            {cr.conjugator.empty() ? g : conjugate(cr.conjugator, g),
             cr.conjugator.empty() ? x : conjugate(cr.conjugator, x), Word()});
      }
      res.decomposition.target = y;
      if (!res.decomposition.verify())
        throw std::logic_error("commutator search hit fails verification");
      return res;
    }
  }
  return res;
}

SearchResult CommutatorSearcher::search_chain(const std::vector<Word>& xs) const {
  for (const Word& x : xs)
    if (!pair_.n_equals_g() && !pair_.in_N(x))
      throw std::invalid_argument("chain support must lie in N");
  if (xs.empty()) throw std::invalid_argument("chain must be nonempty");
  if (xs.size() == 1) {
    SearchResult r = search(xs.front());
    if (r.outcome == SearchOutcome::Found) r.decomposition.term_conjugators = {Word()};
    return r;
  }
  std::vector<Word> conj_candidates = enumerate_words(pair_.alphabet(), budget_.conjugator_len);
  size_t m = xs.size();
  std::vector<size_t> pick(m - 1, 0);
  SearchResult best;
  while (true) {
    std::vector<Word> conjugators = {Word()};
    Word product = xs[0];
    for (size_t i = 1; i < m; ++i) {
      const Word& c = conj_candidates[pick[i - 1]];
      conjugators.push_back(c);
      product = multiply(product, conjugate(c, xs[i]));
    }
    int cap = best.outcome == SearchOutcome::Found ? best.commutator_count - 1 : -1;
    SearchResult r = (cap == -1) ? search(product) : search(product, cap);
    if (r.outcome == SearchOutcome::Found &&
        (best.outcome == SearchOutcome::Unknown || r.commutator_count < best.commutator_count)) {
      best = r;
      best.decomposition.term_conjugators = conjugators;
      if (best.commutator_count == 0) break;
    }
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == conj_candidates.size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }
  return best;
}

SearchResult cl_upper_search(const GroupPair& pair, const Word& y, const SearchBudget& budget) {
  return CommutatorSearcher(pair, budget).search(y);
}

SearchResult cl_chain_upper(const GroupPair& pair, const std::vector<Word>& xs,
                            const SearchBudget& budget) {
  return CommutatorSearcher(pair, budget).search_chain(xs);
}

}  // namespace sclkit
