#include "sclkit/pair.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sclkit/chain.hpp"
#include "sclkit/finite_quotient.hpp"

namespace sclkit {

QuotientSpec QuotientSpec::free_abelian(std::vector<std::vector<long>> images,
                                        std::vector<std::string> lifts) {
  QuotientSpec s;
  s.kind = Kind::FreeAbelian;
  s.abelian_images = std::move(images);
  s.section_lifts = std::move(lifts);
  if (s.abelian_images.empty()) throw std::invalid_argument("free-abelian quotient needs images");
  size_t k = s.abelian_images.front().size();
  if (k == 0) throw std::invalid_argument("free-abelian quotient needs dimension >= 1");
  for (const auto& v : s.abelian_images)
    if (v.size() != k) throw std::invalid_argument("abelian image dimensions disagree");
  return s;
}

QuotientSpec QuotientSpec::finite_table(std::vector<std::vector<int>> table,
                                        std::vector<int> images) {
  QuotientSpec s;
  s.kind = Kind::Finite;
  s.table = std::move(table);
  s.table_images = std::move(images);
  size_t n = s.table.size();
  if (n == 0 || n > 512) throw std::invalid_argument("finite table size out of range");
  for (const auto& row : s.table) {
    if (row.size() != n) throw std::invalid_argument("finite table is not square");
    for (int v : row)
      if (v < 0 || static_cast<size_t>(v) >= n)
        throw std::invalid_argument("finite table entry out of range");
  }
  for (size_t i = 0; i < n; ++i)
    if (s.table[0][i] != static_cast<int>(i) || s.table[i][0] != static_cast<int>(i))
      throw std::invalid_argument("finite table needs the identity at index 0");
  for (size_t i = 0; i < n; ++i) {
    bool has_inverse = false;
    for (size_t j = 0; j < n; ++j) has_inverse |= (s.table[i][j] == 0);
    if (!has_inverse) throw std::invalid_argument("finite table element has no inverse");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        int ij_k = s.table[static_cast<size_t>(s.table[i][j])][k];
        int i_jk = s.table[i][static_cast<size_t>(s.table[j][k])];
        if (ij_k != i_jk) throw std::invalid_argument("finite table is not associative");
      }
  for (int g : s.table_images)
    if (g < 0 || static_cast<size_t>(g) >= n)
      throw std::invalid_argument("finite table generator image out of range");
  return s;
}

QuotientSpec QuotientSpec::finite_perm(std::vector<std::vector<int>> images) {
  QuotientSpec s;
  s.kind = Kind::Finite;
  s.perm_images = std::move(images);
  if (s.perm_images.empty()) throw std::invalid_argument("finite quotient needs images");
  size_t deg = s.perm_images.front().size();
  for (const auto& p : s.perm_images) {
    if (p.size() != deg) throw std::invalid_argument("permutation degrees disagree");
    std::vector<bool> seen(deg, false);
    for (int v : p) {
      if (v < 0 || static_cast<size_t>(v) >= deg || seen[static_cast<size_t>(v)])
        throw std::invalid_argument("invalid permutation image");
      seen[static_cast<size_t>(v)] = true;
    }
  }
  return s;
}

namespace {
using Perm = std::vector<int>;

Perm perm_mul(const Perm& p, const Perm& q) {  // (p*q)(i) = p(q(i))
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[static_cast<size_t>(q[i])];
  return r;
}

Perm perm_inv(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return r;
}

std::string perm_key(const Perm& p) {
  std::string s;
  for (int v : p) {
    s += std::to_string(v);
    s += ',';
  }
  return s;
}
}  // namespace

FiniteQuotient::FiniteQuotient(const std::vector<Perm>& gen_images, int rank) {
  size_t deg = gen_images.front().size();
  Perm id(deg);
  std::iota(id.begin(), id.end(), 0);
  push(id);
  std::deque<int> queue = {0};
  std::vector<Perm> step;  // generators and inverses, in letter order
  for (int i = 0; i < rank; ++i) {
    step.push_back(gen_images[static_cast<size_t>(i)]);
    step.push_back(perm_inv(gen_images[static_cast<size_t>(i)]));
  }
  const size_t kMaxOrder = 100000;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const Perm& s : step) {
      Perm next = perm_mul(elements_[static_cast<size_t>(cur)], s);
      std::string key = perm_key(next);
      if (!index_.count(key)) {
        if (elements_.size() >= kMaxOrder) throw std::invalid_argument("finite quotient too large");
        queue.push_back(push(next));
      }
    }
  }
  int n = order();
  mult_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  inv_.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      mult_[static_cast<size_t>(i)][static_cast<size_t>(j)] = index_.at(
          perm_key(perm_mul(elements_[static_cast<size_t>(i)], elements_[static_cast<size_t>(j)])));
    inv_[static_cast<size_t>(i)] = index_.at(perm_key(perm_inv(elements_[static_cast<size_t>(i)])));
  }
  gen_index_.resize(static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i)
    gen_index_[static_cast<size_t>(i)] = index_.at(perm_key(gen_images[static_cast<size_t>(i)]));
}

FiniteQuotient::FiniteQuotient(const std::vector<std::vector<int>>& table,
                               const std::vector<int>& gen_images) {
  // validated in QuotientSpec::finite_table; restrict to the subgroup the
  // generator images reach so the quotient is exactly the image of p
  size_t n = table.size();
  std::vector<bool> reached(n, false);
  reached[0] = true;
  std::deque<int> queue = {0};
  std::vector<int> table_inv(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (table[i][j] == 0) table_inv[i] = static_cast<int>(j);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int g : gen_images)
      for (int step : {table[static_cast<size_t>(cur)][static_cast<size_t>(g)],
                       table[static_cast<size_t>(cur)][static_cast<size_t>(table_inv[static_cast<size_t>(g)])]})
        if (!reached[static_cast<size_t>(step)]) {
          reached[static_cast<size_t>(step)] = true;
          queue.push_back(step);
        }
  }
  std::vector<int> new_id(n, -1);
  int count = 0;
  for (size_t i = 0; i < n; ++i)
    if (reached[i]) new_id[i] = count++;
  mult_.assign(static_cast<size_t>(count), std::vector<int>(static_cast<size_t>(count)));
  inv_.assign(static_cast<size_t>(count), 0);
  for (size_t i = 0; i < n; ++i) {
    if (!reached[i]) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!reached[j]) continue;
      mult_[static_cast<size_t>(new_id[i])][static_cast<size_t>(new_id[j])] =
          new_id[static_cast<size_t>(table[i][j])];
    }
    inv_[static_cast<size_t>(new_id[i])] = new_id[static_cast<size_t>(table_inv[i])];
  }
  for (int g : gen_images) gen_index_.push_back(new_id[static_cast<size_t>(g)]);
  elements_.resize(static_cast<size_t>(count));  // element data unused for tables
}

int FiniteQuotient::push(const Perm& p) {
  int idx = static_cast<int>(elements_.size());
  elements_.push_back(p);
  index_[perm_key(p)] = idx;
  return idx;
}

GroupPair::GroupPair(Alphabet alphabet, QuotientSpec spec)
    : alphabet_(alphabet), spec_(std::move(spec)) {
  switch (spec_.kind) {
    case QuotientSpec::Kind::Trivial:
      break;
    case QuotientSpec::Kind::FreeAbelian:
      if (static_cast<int>(spec_.abelian_images.size()) != alphabet_.rank())
        throw std::invalid_argument("one abelian image per generator required");
      build_abelian_section();
      break;
    case QuotientSpec::Kind::Finite:
      if (spec_.table.empty() && static_cast<int>(spec_.perm_images.size()) != alphabet_.rank())
        throw std::invalid_argument("one permutation image per generator required");
      build_finite();
      break;
  }
}

void GroupPair::build_finite() {
  if (!spec_.table.empty()) {
    if (static_cast<int>(spec_.table_images.size()) != alphabet_.rank())
      throw std::invalid_argument("one table image per generator required");
    finite_ = std::make_shared<FiniteQuotient>(spec_.table, spec_.table_images);
  } else {
    finite_ = std::make_shared<FiniteQuotient>(spec_.perm_images, alphabet_.rank());
  }
  // BFS coset representatives: shortest words, deterministic letter order.
  // The transversal is prefix-closed, which the Schreier rewriting relies on.
  int n = finite_->order();
  reps_.assign(static_cast<size_t>(n), Word());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  seen[0] = true;
  std::deque<int> queue = {0};
  std::vector<Letter> order;
  for (int i = 1; i <= alphabet_.rank(); ++i) {
    order.push_back(static_cast<Letter>(i));
    order.push_back(static_cast<Letter>(-i));
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (Letter l : order) {
      int gi = finite_->gen(std::abs(l) - 1);
      int next = finite_->mul(cur, l > 0 ? gi : finite_->inv(gi));
      if (!seen[static_cast<size_t>(next)]) {
        seen[static_cast<size_t>(next)] = true;
        std::vector<Letter> w = reps_[static_cast<size_t>(cur)].letters();
        w.push_back(l);
        reps_[static_cast<size_t>(next)] = Word::from_reduced(std::move(w));
        queue.push_back(next);
      }
    }
  }
  mixed_ = detail::build_mixed_class_data(*this, *finite_, reps_);
}

QuotientElem GroupPair::image_in_quotient(const Word& g) const {
  QuotientElem e;
  switch (spec_.kind) {
    case QuotientSpec::Kind::Trivial:
      e.is_identity = true;
      break;
    case QuotientSpec::Kind::FreeAbelian: {
      size_t k = spec_.abelian_images.front().size();
      e.vec.assign(k, 0);
      for (Letter l : g.letters()) {
        const auto& img = spec_.abelian_images[static_cast<size_t>(std::abs(l) - 1)];
        for (size_t i = 0; i < k; ++i) e.vec[i] += (l > 0 ? img[i] : -img[i]);
      }
      e.is_identity = std::all_of(e.vec.begin(), e.vec.end(), [](long v) { return v == 0; });
      break;
    }
    case QuotientSpec::Kind::Finite:
      e.index = finite_->image(g);
      e.is_identity = (e.index == 0);
      break;
  }
  return e;
}

bool GroupPair::in_N(const Word& g) const { return image_in_quotient(g).is_identity; }

int GroupPair::quotient_order() const {
  switch (spec_.kind) {
    case QuotientSpec::Kind::Trivial:
      return 1;
    case QuotientSpec::Kind::Finite:
      return finite_->order();
    default:
      throw std::logic_error("quotient is infinite");
  }
}

const std::vector<Word>& GroupPair::reps() const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("coset representatives require a finite quotient");
  return reps_;
}

int GroupPair::finite_index_of(const Word& g) const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("finite quotient required");
  return finite_->image(g);
}

const Word& GroupPair::rep_of(const Word& g) const {
  return reps()[static_cast<size_t>(finite_index_of(g))];
}

int GroupPair::finite_element_order(const Word& g) const {
  if (spec_.kind == QuotientSpec::Kind::Trivial) return 1;
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("finite quotient required");
  return finite_->element_order(finite_->image(g));
}

int GroupPair::schreier_rank() const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("Schreier data requires a finite quotient");
  return mixed_->schreier_rank;
}

Word GroupPair::rewrite_in_N(const Word& g) const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("Schreier rewriting requires a finite quotient");
  return detail::schreier_rewrite(*this, *finite_, *mixed_, g);
}

Word GroupPair::schreier_generator(int i) const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("Schreier data requires a finite quotient");
  if (i < 1 || i > mixed_->schreier_rank) throw std::invalid_argument("Schreier index out of range");
  return mixed_->generator_words[static_cast<size_t>(i - 1)];
}

MixedClass GroupPair::mixed_class(const Word& y) const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("mixed class requires a finite quotient");
  if (!in_N(y)) throw std::invalid_argument("element is not in N");
  return detail::class_of(*mixed_, rewrite_in_N(y));
}

MixedClass GroupPair::mixed_class_zero() const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("mixed class requires a finite quotient");
  return detail::zero_class(*mixed_);
}

std::vector<BigInt> GroupPair::mixed_class_invariants() const {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("mixed class requires a finite quotient");
  return mixed_->invariants;
}

bool MixedClass::is_zero() const {
  return std::all_of(canon.begin(), canon.end(), [](const BigInt& v) { return v == 0; });
}

std::string MixedClass::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < canon.size(); ++i) os << (i ? "," : "") << canon[i];
  os << ")";
  return os.str();
}

void GroupPair::override_reps(std::vector<Word> reps) {
  if (spec_.kind != QuotientSpec::Kind::Finite)
    throw std::logic_error("coset representatives require a finite quotient");
  if (static_cast<int>(reps.size()) != finite_->order())
    throw std::invalid_argument("need exactly one representative per coset");
  std::set<int> covered;
  for (const Word& r : reps) covered.insert(finite_->image(r));
  if (static_cast<int>(covered.size()) != finite_->order())
    throw std::invalid_argument("representatives do not cover all cosets");
  // Reorder so reps_[i] maps to element i and the identity coset gets the
  // empty word requirement preserved.
  std::vector<Word> ordered(reps.size());
  for (Word& r : reps) ordered[static_cast<size_t>(finite_->image(r))] = std::move(r);
  if (!ordered[0].empty())
    throw std::invalid_argument("identity coset representative must be the empty word");
  // The nontrivial Schreier generators form a free basis of N only for a
  // prefix-closed transversal, and the coinvariant presentation relies on
  // that freeness.
  std::set<Word> rep_set(ordered.begin(), ordered.end());
  for (const Word& r : ordered)
    for (int len = 1; len < r.length(); ++len) {
      Word prefix = Word::from_reduced(
          std::vector<Letter>(r.letters().begin(), r.letters().begin() + len));
      if (!rep_set.count(prefix))
        throw std::invalid_argument("representatives must form a prefix-closed transversal");
    }
  reps_ = std::move(ordered);
  mixed_ = detail::build_mixed_class_data(*this, *finite_, reps_);
}

void GroupPair::build_abelian_section() {
  size_t k = spec_.abelian_images.front().size();
  size_t r = spec_.abelian_images.size();
  if (!spec_.section_lifts.empty()) {
    if (spec_.section_lifts.size() != k)
      throw std::invalid_argument("need one section lift per basis vector");
    for (size_t i = 0; i < k; ++i) {
      Word lift = parse_word(alphabet_, spec_.section_lifts[i]);
      auto img = image_in_quotient(lift).vec;
      for (size_t t = 0; t < k; ++t)
        if (img[t] != (t == i ? 1 : 0))
          throw std::invalid_argument("section lift does not map to the basis vector");
      section_words_.push_back(lift);
    }
    return;
  }
  // Smith normal form of the image matrix gives integer preimages for the
  // standard basis, and validates surjectivity onto Z^k.
  std::vector<std::vector<BigInt>> m(k, std::vector<BigInt>(r));
  for (size_t j = 0; j < r; ++j)
    for (size_t i = 0; i < k; ++i) m[i][j] = spec_.abelian_images[j][i];
  detail::SmithResult snf = detail::smith_normal_form(m, /*track_left=*/true, /*track_right=*/true);
  for (size_t i = 0; i < k; ++i)
    if (i >= snf.diag.size() || snf.diag[i] == 0)
      throw std::invalid_argument("abelian images do not generate Z^k");
  for (size_t i = 0; i < k; ++i)
    if (snf.diag[i] != 1 && snf.diag[i] != -1)
      throw std::invalid_argument("abelian images do not generate Z^k");
  // M = U^{-1} D V^{-1} with snf.left = U, snf.right = V; for e_i solve
  // M u = e_i via u = V * D^{-1} * U * e_i.
  for (size_t i = 0; i < k; ++i) {
    std::vector<BigInt> w(k, 0);
    for (size_t t = 0; t < k; ++t) w[t] = snf.left[t][i];  // U * e_i
    for (size_t t = 0; t < k; ++t) w[t] /= snf.diag[t];
    Word lift;
    for (size_t jj = 0; jj < r; ++jj) {
      BigInt acc = 0;
      for (size_t t = 0; t < k; ++t) acc += snf.right[jj][t] * w[t];
      long e = static_cast<long>(acc);
      if (e != 0)
        lift = multiply(lift, power(Word::from_reduced({static_cast<Letter>(jj + 1)}), e));
    }
    section_words_.push_back(lift);
  }
}

Word GroupPair::abelian_section(const std::vector<long>& v) const {
  if (spec_.kind != QuotientSpec::Kind::FreeAbelian)
    throw std::logic_error("abelian section requires a free-abelian quotient");
  size_t k = spec_.abelian_images.front().size();
  if (v.size() != k) throw std::invalid_argument("section argument has wrong dimension");
  Word w;
  for (size_t i = 0; i < k; ++i)
    if (v[i] != 0) w = multiply(w, power(section_words_[i], v[i]));
  return w;
}

MembershipReport GroupPair::membership_status(const Chain1& c, const Chain2* witness) const {
  MembershipReport report;
  if (!c.is_integral()) throw std::invalid_argument("membership requires an integral chain");
  for (const auto& [word, coeff] : c.terms()) {
    (void)coeff;
    if (!in_N(word)) throw std::invalid_argument("chain support is not inside N");
  }
  if (witness != nullptr) {
    if (is_prime_support(*this, *witness) && boundary(*witness) == c) {
      report.status = Membership::Yes;
      report.detail = "explicit prime 2-chain witness";
      return report;
    }
  }
  switch (spec_.kind) {
    case QuotientSpec::Kind::Trivial: {
      std::vector<Rational> total(static_cast<size_t>(alphabet_.rank()), Rational(0));
      for (const auto& [word, coeff] : c.terms()) {
        auto ab = abelianization(alphabet_, word);
        for (size_t i = 0; i < total.size(); ++i) total[i] += coeff * ab[i];
      }
      bool zero = std::all_of(total.begin(), total.end(), [](const Rational& q) { return q == 0; });
      report.status = zero ? Membership::Yes : Membership::No;
      report.detail = zero ? "all exponent sums vanish" : "nonzero abelianization obstruction";
      return report;
    }
    case QuotientSpec::Kind::Finite: {
      // N/[G,N] is abelian, so the class of the ordered product is the
      // coefficient-weighted sum of classes.
      std::vector<BigInt> acc(static_cast<size_t>(schreier_rank()), 0);
      for (const auto& [word, coeff] : c.terms()) {
        Word rw = rewrite_in_N(word);
        BigInt n = numerator(coeff);
        for (Letter l : rw.letters())
          acc[static_cast<size_t>(std::abs(l) - 1)] += (l > 0 ? n : -n);
      }
      MixedClass cls = detail::class_of_vector(*mixed_, acc);
      if (cls.is_zero()) {
        report.status = Membership::Yes;
        report.detail = "mixed class of ordered product vanishes";
      } else {
        report.status = Membership::No;
        report.detail = "nonzero class in N/[G,N]";
        report.obstruction = cls;
      }
      return report;
    }
    case QuotientSpec::Kind::FreeAbelian: {
      std::vector<Rational> total(static_cast<size_t>(alphabet_.rank()), Rational(0));
      for (const auto& [word, coeff] : c.terms()) {
        auto ab = abelianization(alphabet_, word);
        for (size_t i = 0; i < total.size(); ++i) total[i] += coeff * ab[i];
      }
      bool zero = std::all_of(total.begin(), total.end(), [](const Rational& q) { return q == 0; });
      if (!zero) {
        report.status = Membership::No;
        report.detail = "nonzero abelianization obstruction";
      } else {
        report.status = Membership::Unknown;
        report.detail = "no exact [G,N]-membership test for infinite quotients; "
                        "provide or derive a prime 2-chain witness";
      }
      return report;
    }
  }
  return report;
}

}  // namespace sclkit
