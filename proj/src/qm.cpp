#include "sclkit/qm.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sclkit {

CountingQm::CountingQm(Alphabet a, Word w) : alphabet(a), base(std::move(w)) {
  if (base.empty()) throw std::invalid_argument("counting quasimorphism needs a nonempty base");
  for (Letter l : base.letters())
    if (!alphabet.contains(l)) throw std::invalid_argument("base word outside alphabet");
}

int count_subword(const Word& w, const Word& g) {
  return kernel::count_occurrences(w.letters().data(), w.length(), g.letters().data(), g.length());
}

long eval_raw(const CountingQm& q, const Word& g) {
  Word wi = inverse(q.base);
  return count_subword(q.base, g) - count_subword(wi, g);
}

Rational homogenize_counting(const CountingQm& q, const Word& g) {
  Word core = cyclic_reduce(g).core;
  if (core.empty()) return 0;
  long wl = q.base.length(), cl = core.length();
  long k = (wl + cl) / cl + 1;  // k*cl >= wl + 1
  long a = eval_raw(q, power(core, k));
  long b = eval_raw(q, power(core, k + 1));
  assert(eval_raw(q, power(core, k + 2)) - b == b - a);
  return Rational(b - a);
}

namespace {

struct JunctionTables {
  std::vector<Word> side;    // candidates for u and v: length <= |w| - 1
  std::vector<Word> middle;  // candidates for the cancelled block c: length <= 2|w|
};

JunctionTables junction_tables(const CountingQm& q) {
  if (q.base.length() > 20)
    throw std::invalid_argument("junction enumeration supports base length up to 20");
  JunctionTables t;
  t.side = enumerate_words(q.alphabet, q.base.length() - 1);
  t.middle = enumerate_words(q.alphabet, 2 * q.base.length());
  return t;
}

// delta(uc, c^{-1}v) evaluated by plain window counting; the three
// concatenations are reduced under the junction constraints.
long junction_delta(const Word& w, const Word& wi, const Word& u, const Word& c, const Word& ci,
                    const Word& v) {
  Letter buf[64];
  auto phi = [&](const Word& a, const Word& b) -> long {
    int n = 0;
    for (Letter l : a.letters()) buf[n++] = l;
    for (Letter l : b.letters()) buf[n++] = l;
    return kernel::count_occurrences(w.letters().data(), w.length(), buf, n) -
           kernel::count_occurrences(wi.letters().data(), wi.length(), buf, n);
  };
  return phi(u, v) - phi(u, c) - phi(ci, v);
}

long junction_max_for_middle(const CountingQm& q, const JunctionTables& t, const Word& wi,
                             size_t mi) {
  const Word& c = t.middle[mi];
  Word ci = inverse(c);
  long best = 0;
  for (const Word& u : t.side) {
    if (!u.empty() && !c.empty() && c.letters().front() == -u.letters().back()) continue;
    for (const Word& v : t.side) {
      if (!v.empty() && !c.empty() && v.letters().front() == c.letters().front()) continue;
      if (!v.empty() && !u.empty() && v.letters().front() == -u.letters().back()) continue;
      long d = junction_delta(q.base, wi, u, c, ci, v);
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
  }
  return best;
}

}  // namespace

long defect_counting_junction_serial(const CountingQm& q) {
  JunctionTables t = junction_tables(q);
  Word wi = inverse(q.base);
  long best = 0;
  for (size_t mi = 0; mi < t.middle.size(); ++mi)
    best = std::max(best, junction_max_for_middle(q, t, wi, mi));
  return best;
}

long defect_counting_junction(const CountingQm& q) {
  JunctionTables t = junction_tables(q);
  Word wi = inverse(q.base);
  long best = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : best)
#endif
  for (size_t mi = 0; mi < t.middle.size(); ++mi) {
    long local = junction_max_for_middle(q, t, wi, mi);
    if (local > best) best = local;
  }
  return best;
}

namespace {

struct BruteTables {
  std::vector<Word> words;
  std::vector<long> phi;       // raw values per word
  std::vector<size_t> inv_at;  // index of the inverse word
};

BruteTables brute_tables(const CountingQm& q, int max_len) {
  if (max_len > 60) throw std::invalid_argument("brute-force defect supports length up to 60");
  BruteTables t;
  t.words = enumerate_words(q.alphabet, max_len);
  t.phi.resize(t.words.size());
  t.inv_at.resize(t.words.size());
  std::map<Word, size_t> index;
  for (size_t i = 0; i < t.words.size(); ++i) index[t.words[i]] = i;
  for (size_t i = 0; i < t.words.size(); ++i) {
    t.phi[i] = eval_raw(q, t.words[i]);
    t.inv_at[i] = index.at(inverse(t.words[i]));
  }
  return t;
}

long brute_row_max(const CountingQm& q, const BruteTables& t, const Word& wi, size_t i) {
  // delta(g2^{-1}, g1^{-1}) = -delta(g1, g2), so only pairs with
  // i <= inv_at[j] need scanning.
  Letter buf[128];
  const Word& g1 = t.words[i];
  long best = 0;
  for (size_t j = 0; j < t.words.size(); ++j) {
    if (i > t.inv_at[j]) continue;
    const Word& g2 = t.words[j];
    int n = kernel::concat_reduce(g1.letters().data(), g1.length(), g2.letters().data(),
                                  g2.length(), buf);
    long d = kernel::count_occurrences(q.base.letters().data(), q.base.length(), buf, n) -
             kernel::count_occurrences(wi.letters().data(), wi.length(), buf, n) - t.phi[i] -
             t.phi[j];
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return best;
}

}  // namespace

long defect_counting_brute_serial(const CountingQm& q, int max_len) {
  BruteTables t = brute_tables(q, max_len);
  Word wi = inverse(q.base);
  long best = 0;
  for (size_t i = 0; i < t.words.size(); ++i) best = std::max(best, brute_row_max(q, t, wi, i));
  return best;
}

long defect_counting_brute(const CountingQm& q, int max_len) {
  BruteTables t = brute_tables(q, max_len);
  Word wi = inverse(q.base);
  long best = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
#endif
  for (size_t i = 0; i < t.words.size(); ++i) {
    long local = brute_row_max(q, t, wi, i);
    if (local > best) best = local;
  }
  return best;
}

DefectResult defect_counting(const CountingQm& q) {
  return {Rational(defect_counting_junction(q)), DefectKind::Exact};
}

QmCertificate make_certificate(const CountingQm& q) {
  QmCertificate cert;
  cert.name = "count[" + format_word(q.alphabet, q.base) + "]";
  long raw = defect_counting_junction(q);
  if (raw == 0) {
    cert.defect_upper = 0;
    cert.defect_kind = DefectKind::Exact;
    cert.provenance = "homomorphism (zero raw defect)";
  } else {
    cert.defect_upper = Rational(2 * raw);
    cert.defect_kind = DefectKind::CertifiedBound;
    cert.provenance = "twice the exact raw counting defect " + std::to_string(raw);
  }
  CountingQm qc = q;
  cert.eval = [qc](const Word& g) { return homogenize_counting(qc, g); };
  return cert;
}

Rational evaluate_on_chain(const QmCertificate& cert, const Chain1& c) {
  Rational acc = 0;
  for (const auto& [w, coeff] : c.terms()) {
    if (!cert.in_domain(w))
      throw std::invalid_argument("chain support outside certificate domain");
    acc += coeff * cert.eval(w);
  }
  return acc;
}

QmCertificate restrict_to_N(const GroupPair& pair, const QmCertificate& cert) {
  QmCertificate out = cert;
  out.name = cert.name + "|N";
  out.invariance = Invariance::GInvariantOnN;
  GroupPair p = pair;
  auto base_check = cert.domain_check;
  out.domain_check = [p, base_check](const Word& g) {
    return p.in_N(g) && (!base_check || base_check(g));
  };
  out.provenance = cert.provenance + "; restricted to N";
  return out;
}

QmCertificate counting_certificate_on_N(const GroupPair& pair, const Word& base_in_schreier) {
  Alphabet sub(pair.schreier_rank());
  CountingQm q(sub, base_in_schreier);
  QmCertificate inner = make_certificate(q);
  QmCertificate out;
  out.name = "countN[" + format_word(sub, base_in_schreier) + "]";
  out.defect_upper = inner.defect_upper;
  out.defect_kind = inner.defect_kind;
  out.invariance = Invariance::Plain;
  GroupPair p = pair;
  auto inner_eval = inner.eval;
  out.eval = [p, inner_eval](const Word& x) { return inner_eval(p.rewrite_in_N(x)); };
  out.domain_check = [p](const Word& x) { return p.in_N(x); };
  out.provenance = "counting on the Schreier generators of N; " + inner.provenance;
  return out;
}

QmCertificate invariant_average(const GroupPair& pair, const QmCertificate& cert) {
  if (pair.kind() != QuotientSpec::Kind::Finite)
    throw std::invalid_argument("invariant averaging requires a finite quotient");
  QmCertificate out;
  out.name = "avg[" + cert.name + "]";
  out.defect_upper = cert.defect_upper;
  out.defect_kind = cert.defect_kind;
  out.invariance = Invariance::GInvariantOnN;
  GroupPair p = pair;
  auto inner = cert.eval;
  int order = pair.quotient_order();
  out.eval = [p, inner, order](const Word& x) {
    Rational acc = 0;
    for (const Word& b : p.reps()) acc += inner(conjugate(b, x));
    return acc / order;
  };
  out.domain_check = [p](const Word& x) { return p.in_N(x); };
  out.provenance = "coset average of " + cert.name;
  return out;
}

NQmExtension extend_N_quasimorphism(const GroupPair& pair, const QmCertificate& cert,
                                    const std::map<int, Rational>& tail_values) {
  if (pair.kind() == QuotientSpec::Kind::Finite) {
    for (const auto& [idx, val] : tail_values) {
      (void)val;
      if (idx < 0 || idx >= pair.quotient_order())
        throw std::invalid_argument("tail value index outside coset range");
    }
    if (auto it = tail_values.find(0); it != tail_values.end() && it->second != 0)
      throw std::invalid_argument("tail value at the identity coset must be zero");
  }
  NQmExtension ext;
  ext.name = "ext[" + cert.name + "]";
  ext.defect_bound = cert.defect_upper;
  GroupPair p = pair;
  auto mu = cert.eval;
  auto tails = tail_values;
  switch (pair.kind()) {
    case QuotientSpec::Kind::Trivial:
      ext.eval = [mu](const Word& g) { return mu(g); };
      break;
    case QuotientSpec::Kind::Finite:
      ext.eval = [p, mu, tails](const Word& g) {
        int idx = p.finite_index_of(g);
        const Word& s = p.reps()[static_cast<size_t>(idx)];
        Word x = multiply(inverse(s), g);
        Rational tail = 0;
        if (auto it = tails.find(idx); it != tails.end()) tail = it->second;
        return tail + mu(x);
      };
      break;
    case QuotientSpec::Kind::FreeAbelian:
      ext.eval = [p, mu](const Word& g) {
        Word s = p.abelian_section(p.image_in_quotient(g).vec);
        return mu(multiply(inverse(s), g));
      };
      break;
  }
  return ext;
}

QmCertificate extend_virtual_section(const GroupPair& pair, const QmCertificate& cert) {
  if (cert.invariance != Invariance::GInvariantOnN && !pair.n_equals_g())
    throw std::invalid_argument("virtual-section extension needs a G-invariant certificate");
  if (pair.kind() == QuotientSpec::Kind::FreeAbelian)
    throw std::invalid_argument(
        "virtual-section extension over an infinite quotient: use the interval form");
  QmCertificate out;
  out.name = "vsec[" + cert.name + "]";
  out.defect_upper = cert.defect_upper * 2;
  out.defect_kind =
      cert.defect_kind == DefectKind::Empirical ? DefectKind::Empirical : DefectKind::CertifiedBound;
  out.invariance = Invariance::Plain;
  GroupPair p = pair;
  auto mu = cert.eval;
  if (pair.n_equals_g()) {
    out.eval = mu;
    out.defect_upper = cert.defect_upper;
  } else {
    out.eval = [p, mu](const Word& g) {
      int d = p.finite_element_order(g);
      return mu(power(g, d)) / d;
    };
  }
  out.provenance = "virtual-section extension of " + cert.name;
  return out;
}

RatInterval extend_virtual_section_interval(const GroupPair& pair, const QmCertificate& cert,
                                            const Word& g, long n) {
  if (pair.kind() != QuotientSpec::Kind::FreeAbelian ||
      pair.spec().abelian_images.front().size() != 1)
    throw std::invalid_argument("interval extension targets an infinite cyclic quotient");
  if (cert.invariance != Invariance::GInvariantOnN)
    throw std::invalid_argument("interval extension needs a G-invariant certificate");
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  Word gn = power(g, n);
  Word s = pair.abelian_section(pair.image_in_quotient(gn).vec);
  Rational mid = cert.eval(multiply(gn, inverse(s))) / n;
  Rational half = cert.defect_upper / n;
  return {mid - half, mid + half};
}

Rational sampled_quasi_invariance(const GroupPair& pair, const QmCertificate& cert, int samples,
                                  unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(0, 6);
  std::uniform_int_distribution<int> letter_dist(1, 2 * pair.alphabet().rank());
  auto random_word = [&](int len) {
    std::vector<Letter> letters;
    while (static_cast<int>(letters.size()) < len) {
      int pick = letter_dist(rng);
      Letter l = static_cast<Letter>(pick <= pair.alphabet().rank() ? pick
                                                                    : -(pick - pair.alphabet().rank()));
      if (!letters.empty() && letters.back() == -l) continue;
      letters.push_back(l);
    }
    return Word::from_reduced(std::move(letters));
  };
  Rational best = 0;
  for (int i = 0; i < samples; ++i) {
    Word g = random_word(len_dist(rng));
    Word x = random_word(len_dist(rng));
    if (!pair.n_equals_g()) {
      if (pair.kind() == QuotientSpec::Kind::Finite) {
        x = multiply(x, inverse(pair.rep_of(x)));
      } else {
        Word s = pair.abelian_section(pair.image_in_quotient(x).vec);
        x = multiply(x, inverse(s));
      }
    }
    if (!cert.in_domain(x)) continue;
    Rational d = rational_abs(cert.eval(conjugate(g, x)) - cert.eval(x));
    if (d > best) best = d;
  }
  return best;
}

std::vector<QmCertificate> auto_certificates(const GroupPair& pair, int max_base_len,
                                             int max_schreier_len) {
  std::vector<QmCertificate> certs;
  // one base word per {w, w^{-1}} pair; single letters are homomorphisms and
  // get dropped by their zero defect downstream
  std::vector<Word> bases;
  for (const Word& w : enumerate_words(pair.alphabet(), max_base_len)) {
    if (w.empty()) continue;
    Word wi = inverse(w);
    if (wi < w) continue;
    bases.push_back(w);
  }
  for (const Word& w : bases) {
    QmCertificate cert = make_certificate(CountingQm(pair.alphabet(), w));
    if (cert.defect_upper == 0) continue;
    certs.push_back(pair.n_equals_g() ? cert : restrict_to_N(pair, cert));
  }
  if (pair.kind() == QuotientSpec::Kind::Finite) {
    Alphabet sub(pair.schreier_rank());
    for (const Word& w : enumerate_words(sub, max_schreier_len)) {
      if (w.empty()) continue;
      Word wi = inverse(w);
      if (wi < w) continue;
      QmCertificate cert = counting_certificate_on_N(pair, w);
      if (cert.defect_upper == 0) continue;
      certs.push_back(invariant_average(pair, cert));
    }
  }
  return certs;
}

}  // namespace sclkit
