#include "sclkit/chain.hpp"

#include <sstream>
#include <stdexcept>

namespace sclkit {

void Chain1::add(const Rational& coeff, const Word& g) {
  if (coeff == 0) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Chain1::coeff(const Word& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Chain1::is_integral() const {
  for (const auto& [w, q] : terms_) {
    (void)w;
    if (denominator(q) != 1) return false;
  }
  return true;
}

Chain1 Chain1::operator+(const Chain1& o) const {
  Chain1 r = *this;
  for (const auto& [w, q] : o.terms_) r.add(q, w);
  return r;
}

Chain1 Chain1::operator-(const Chain1& o) const {
  Chain1 r = *this;
  for (const auto& [w, q] : o.terms_) r.add(-q, w);
  return r;
}

Chain1 Chain1::operator*(const Rational& q) const {
  Chain1 r;
  if (q == 0) return r;
  for (const auto& [w, c] : terms_) r.add(c * q, w);
  return r;
}

void Chain2::add(const Rational& coeff, const Word& g1, const Word& g2) {
  add(coeff, Pair2{g1, g2});
}

void Chain2::add(const Rational& coeff, const Pair2& p) {
  if (coeff == 0) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Chain2 Chain2::operator+(const Chain2& o) const {
  Chain2 r = *this;
  for (const auto& [p, q] : o.terms_) r.add(q, p);
  return r;
}

Chain2 Chain2::operator*(const Rational& q) const {
  Chain2 r;
  if (q == 0) return r;
  for (const auto& [p, c] : terms_) r.add(c * q, p);
  return r;
}

Chain1 boundary_pair(const Word& g1, const Word& g2) {
  Chain1 c;
  c.add(1, g2);
  c.add(-1, multiply(g1, g2));
  c.add(1, g1);
  return c;
}

Chain1 boundary(const Chain2& c2) {
  Chain1 out;
  for (const auto& [p, q] : c2.terms()) {
    out.add(q, p.second);
    out.add(-q, multiply(p.first, p.second));
    out.add(q, p.first);
  }
  return out;
}

Rational l1_norm(const Chain1& c) {
  Rational s = 0;
  for (const auto& [w, q] : c.terms()) {
    (void)w;
    s += rational_abs(q);
  }
  return s;
}

Rational l1_norm(const Chain2& c) {
  Rational s = 0;
  for (const auto& [p, q] : c.terms()) {
    (void)p;
    s += rational_abs(q);
  }
  return s;
}

bool is_prime_pair(const GroupPair& pair, const Word& g1, const Word& g2) {
  return pair.in_N(g1) || pair.in_N(g2);
}

bool is_prime_support(const GroupPair& pair, const Chain2& c) {
  for (const auto& [p, q] : c.terms()) {
    (void)q;
    if (!is_prime_pair(pair, p.first, p.second)) return false;
  }
  return true;
}

Chain1 chain_power(const Chain1& c, long n) {
  if (n < 1) throw std::invalid_argument("chain power requires n >= 1");
  if (!c.is_integral()) throw std::invalid_argument("chain power requires integral coefficients");
  Chain1 out;
  for (const auto& [w, q] : c.terms()) out.add(q, power(w, n));
  return out;
}

Chain1 normalize_signs(const Chain1& c) {
  Chain1 out;
  for (const auto& [w, q] : c.terms()) {
    if (q < 0)
      out.add(-q, inverse(w));
    else
      out.add(q, w);
  }
  return out;
}

long term_count(const Chain1& c) {
  if (!c.is_integral()) throw std::invalid_argument("term count requires an integral chain");
  long n = 0;
  for (const auto& [w, q] : c.terms()) {
    (void)w;
    n += static_cast<long>(numerator(rational_abs(q)));
  }
  return n;
}

WitnessChain witness_chain2(const GroupPair& pair,
                            const std::vector<CommutatorTerm>& decomposition) {
  // Per commutator z = [g, x]:  d([g,x], xg) - d(g, x) + d(x, g) = [g, x],
  // with outer conjugators absorbed into g and x. Products are chained with
  // one prefix pair per extra factor.
  Chain2 w;
  Word product;
  bool first = true;
  for (const CommutatorTerm& term : decomposition) {
    if (!pair.in_N(term.x)) throw std::invalid_argument("commutator entry x is not in N");
    Word g = term.conjugator.empty() ? term.g : conjugate(term.conjugator, term.g);
    Word x = term.conjugator.empty() ? term.x : conjugate(term.conjugator, term.x);
    Word z = commutator(g, x);
    w.add(1, commutator(g, x), multiply(x, g));
    w.add(-1, g, x);
    w.add(1, x, g);
    if (first) {
      product = z;
      first = false;
    } else {
      w.add(-1, product, z);
      product = multiply(product, z);
    }
  }
  return {w, product};
}

WitnessChain split_product_witness(const GroupPair& pair, const std::vector<Word>& x_list,
                                   const std::vector<Word>& conjugators) {
  if (!conjugators.empty() && conjugators.size() != x_list.size())
    throw std::invalid_argument("one conjugator per factor (or none)");
  Chain2 w;
  Word product;
  Word prev_prefix;
  for (size_t i = 0; i < x_list.size(); ++i) {
    const Word& x = x_list[i];
    if (!pair.in_N(x)) throw std::invalid_argument("factor is not in N");
    Word c = conjugators.empty() ? Word() : conjugators[i];
    Word q = c.empty() ? x : conjugate(c, x);
    if (!c.empty()) {
      // d(c, x) - d(q, c) has boundary x - q
      w.add(1, c, x);
      w.add(-1, q, c);
    }
    if (i == 0) {
      product = q;
    } else {
      w.add(1, prev_prefix, q);
      product = multiply(prev_prefix, q);
    }
    prev_prefix = product;
  }
  return {w, product};
}

std::string format_chain(const Alphabet& alphabet, const Chain1& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, q] : c.terms()) {
    if (!first) os << " + ";
    os << rational_str(q) << "*" << format_word(alphabet, w);
    first = false;
  }
  return os.str();
}

}  // namespace sclkit
