#include "sclkit/scl.hpp"

#include <algorithm>
#include <stdexcept>

namespace sclkit {

namespace {

// Unit-term expansion of the sign-normalized chain, in canonical order.
std::vector<Word> positive_terms(const Chain1& c) {
  std::vector<Word> out;
  Chain1 norm = normalize_signs(c);
  for (const auto& [w, q] : norm.terms()) {
    long mult = static_cast<long>(numerator(q));
    for (long i = 0; i < mult; ++i) out.push_back(w);
  }
  return out;
}

struct PowerAttempt {
  long n;
  std::optional<SearchResult> search;  // decomposition of the conjugated product
  std::optional<LpSolution> lp;
  int radius = 0;
};

// Feasibility witness for the signed chain target: commutator chain for the
// conjugated product, the splitting chain, and the sign-conversion pairs for
// negative terms.
Chain2 assemble_witness(const GroupPair& pair, const Chain1& target, const SearchResult& found) {
  std::vector<Word> ys = positive_terms(target);
  WitnessChain comm = witness_chain2(pair, found.decomposition.commutators);
  WitnessChain split = split_product_witness(pair, ys, found.decomposition.term_conjugators);
  Chain2 w = comm.chain + split.chain;
  if (found.decomposition.commutators.empty()) {
    // trivial product: the unit pair supplies the boundary of the one-term
    // identity chain that a nonempty commutator witness would carry
    w.add(1, Word(), Word());
  }
  for (const auto& [word, q] : target.terms()) {
    if (q >= 0) continue;
    long mult = -static_cast<long>(numerator(q));
    Chain2 convert;
    convert.add(-1, word, inverse(word));
    convert.add(-1, Word(), Word());
    w = w + convert * Rational(mult);
  }
  return w;
}

PowerAttempt attempt_power(const GroupPair& pair, const Chain1& c, long n,
                           const SclParams& params, const CommutatorSearcher* searcher) {
  PowerAttempt at;
  at.n = n;
  at.radius = params.radius;
  Chain1 target = chain_power(c, n);
  if (params.use_search && searcher != nullptr) {
    std::vector<Word> ys = positive_terms(target);
    if (!ys.empty()) {
      SearchResult r = searcher->search_chain(ys);
      if (r.outcome == SearchOutcome::Found) at.search = r;
    }
  }
  if (params.use_lp) {
    std::vector<Pair2> extras;
    if (at.search) {
      Chain2 w = assemble_witness(pair, target, *at.search);
      if (boundary(w) != target) throw std::logic_error("assembled witness has wrong boundary");
      for (const auto& [pr, q] : w.terms()) {
        (void)q;
        extras.push_back(pr);
      }
    }
    FillProblem prob(pair, target, build_support(pair, params.radius, extras));
    LpSolution sol = solve_min_l1(prob);
    if (sol.status == LpStatus::Optimal) at.lp = sol;
  }
  return at;
}

}  // namespace

namespace {

// The per-power jobs are independent; they run as a parallel grid and are
// folded in power order so reports never depend on the schedule.
std::vector<PowerAttempt> attempt_grid(const GroupPair& pair, const Chain1& c,
                                       const SclParams& params) {
  std::optional<CommutatorSearcher> searcher;
  if (params.use_search) searcher.emplace(pair, params.budget);
  std::vector<PowerAttempt> attempts(params.powers.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (size_t i = 0; i < params.powers.size(); ++i)
    attempts[i] = attempt_power(pair, c, params.powers[i], params, searcher ? &*searcher : nullptr);
  return attempts;
}

}  // namespace

UpperBound fl_upper(const GroupPair& pair, const Chain1& c, const SclParams& params) {
  if (!c.is_integral()) throw std::invalid_argument("filling bounds need an integral chain");
  UpperBound ub;
  long kl = term_count(c);
  for (const PowerAttempt& at : attempt_grid(pair, c, params)) {
    if (!at.lp) continue;
    Rational bound = (at.lp->value + kl) / at.n;
    ub.steps.push_back({at.n, "lp", at.lp->value, bound, at.radius});
    if (!ub.finite || bound < ub.value) {
      ub.finite = true;
      ub.value = bound;
    }
  }
  return ub;
}

UpperBound scl_upper(const GroupPair& pair, const Chain1& c, const SclParams& params) {
  if (!c.is_integral()) throw std::invalid_argument("scl bounds need an integral chain");
  UpperBound ub;
  long m = term_count(c);
  for (const PowerAttempt& at : attempt_grid(pair, c, params)) {
    if (at.lp) {
      Rational bound = (at.lp->value + m) / Rational(4 * at.n);
      ub.steps.push_back({at.n, "lp", at.lp->value, bound, at.radius});
      if (!ub.finite || bound < ub.value) {
        ub.finite = true;
        ub.value = bound;
      }
    }
    if (at.search) {
      Rational bound = Rational(at.search->commutator_count + m - 1) / at.n;
      ub.steps.push_back({at.n, "cl", Rational(at.search->commutator_count), bound, 0});
      if (!ub.finite || bound < ub.value) {
        ub.finite = true;
        ub.value = bound;
      }
    }
  }
  return ub;
}

LowerBound scl_lower(const GroupPair& pair, const Chain1& c,
                     const std::vector<QmCertificate>& certs) {
  LowerBound lb;
  lb.value = 0;
  for (const auto& [w, q] : c.terms()) {
    (void)q;
    if (!pair.n_equals_g() && !pair.in_N(w))
      throw std::invalid_argument("chain support must lie in N");
  }
  for (const QmCertificate& cert : certs) {
    if (cert.defect_upper <= 0) continue;  // homomorphisms are excluded
    bool in_domain = true;
    for (const auto& [w, q] : c.terms()) {
      (void)q;
      in_domain &= cert.in_domain(w);
    }
    if (!in_domain) throw std::invalid_argument("certificate domain mismatch");
    Rational v = evaluate_on_chain(cert, c);
    Rational bound = rational_abs(v) / (2 * cert.defect_upper);
    if (bound > lb.value) {
      lb.value = bound;
      lb.certificate = cert.name;
      lb.certificate_value = v;
      lb.certificate_defect = cert.defect_upper;
    }
  }
  return lb;
}

SclBounds sandwich(const GroupPair& pair, const Chain1& c, const SclParams& params,
                   const std::vector<QmCertificate>& certs) {
  SclBounds out;
  MembershipReport mem = pair.membership_status(c);
  out.membership = mem.status;
  out.membership_detail = mem.detail;
  if (mem.status == Membership::No)
    throw std::invalid_argument("chain is outside the mixed boundary domain: " + mem.detail);

  const std::vector<QmCertificate>& use =
      certs.empty() ? auto_certificates(pair, params.cert_base_len, params.cert_schreier_len)
                    : certs;
  out.lower = scl_lower(pair, c, use);
  out.upper = scl_upper(pair, c, params);
  bool lp_feasible = false;
  for (const UpperStep& s : out.upper.steps) lp_feasible |= (s.kind == "lp");
  out.domain_certified = (mem.status == Membership::Yes) || lp_feasible;
  if (out.upper.finite && out.lower.value > out.upper.value)
    throw std::logic_error("lower bound exceeded upper bound");
  return out;
}

DualityReport another_duality_check(const GroupPair& pair, const QmCertificate& cert,
                                    const std::vector<Chain1>& chains, const SclParams& params) {
  if (cert.defect_upper <= 0)
    throw std::invalid_argument("duality probe needs a certificate with positive defect");
  DualityReport rep;
  rep.best_ratio_lower = 0;
  for (const Chain1& c : chains) {
    SclBounds b = sandwich(pair, c, params);
    if (!b.upper.finite) continue;
    DualityRatio r;
    r.chain = c;
    r.value_abs = rational_abs(evaluate_on_chain(cert, c));
    if (b.upper.value > 0) {
      r.ratio_lower = r.value_abs / b.upper.value;
      if (r.ratio_lower > rep.best_ratio_lower) rep.best_ratio_lower = r.ratio_lower;
    }
    if (b.lower.value > 0) r.ratio_upper = r.value_abs / b.lower.value;
    r.consistent = (r.value_abs <= 2 * cert.defect_upper * b.upper.value);
    rep.all_consistent &= r.consistent;
    rep.ratios.push_back(r);
  }
  return rep;
}

namespace {

Interval interval_of(const SclBounds& b) {
  Interval i;
  i.lo = b.lower.value;
  i.finite_hi = b.upper.finite;
  if (b.upper.finite) i.hi = b.upper.value;
  return i;
}

bool overlap(const Interval& a, const Interval& b) {
  if (a.finite_hi && b.lo > a.hi) return false;
  if (b.finite_hi && a.lo > b.hi) return false;
  return true;
}

}  // namespace

HarnessReport harness_finite_index(const GroupPair& pair, const Word& x, const SclParams& params) {
  HarnessReport rep;
  if (pair.kind() != QuotientSpec::Kind::Finite)
    throw std::invalid_argument("finite-index harness needs a finite quotient");
  // x must be a commutator-subgroup element of N for both sides to be defined
  Word rw = pair.rewrite_in_N(x);
  Alphabet sub(pair.schreier_rank());
  auto ab = abelianization(sub, rw);
  bool in_comm = std::all_of(ab.begin(), ab.end(), [](long v) { return v == 0; });
  if (!in_comm) {
    rep.detail = "x is not in the commutator subgroup of N";
    return rep;
  }
  rep.applicable = true;

  // left: scl of x over G alone
  GroupPair g_alone(pair.alphabet(), QuotientSpec::trivial());
  Chain1 cx;
  cx.add(1, x);
  SclBounds left = sandwich(g_alone, cx, params);
  rep.left = interval_of(left);

  // right: (1/#Gamma) scl_N of the summed conjugates, through the Schreier
  // embedding of N as a free group
  GroupPair n_alone(sub, QuotientSpec::trivial());
  Chain1 conj_chain;
  for (const Word& r : pair.reps()) conj_chain.add(1, pair.rewrite_in_N(conjugate(r, x)));
  SclBounds right = sandwich(n_alone, conj_chain, params);
  rep.right = interval_of(right);
  int order = pair.quotient_order();
  rep.right.lo /= order;
  if (rep.right.finite_hi) rep.right.hi /= order;

  rep.consistent = overlap(rep.left, rep.right);
  rep.detail = "finite-index transfer probe";
  return rep;
}

HarnessReport harness_free_product(const Alphabet& alphabet, const Word& g1, const Word& g2,
                                   const SclParams& params) {
  HarnessReport rep;
  if (g1.empty() || g2.empty())
    throw std::invalid_argument("free-product harness needs nontrivial factors");
  // both sides are defined iff the exponent sums of g1 and g2 cancel
  auto a1 = abelianization(alphabet, g1), a2 = abelianization(alphabet, g2);
  bool balanced = true;
  for (size_t i = 0; i < a1.size(); ++i) balanced &= (a1[i] + a2[i] == 0);
  if (!balanced) {
    rep.detail = "g1 + g2 has a nonzero exponent sum; both sides are out of domain";
    return rep;
  }
  rep.applicable = true;

  // right: scl_G(g1 + g2) + 1/2
  GroupPair g_alone(alphabet, QuotientSpec::trivial());
  Chain1 sum;
  sum.add(1, g1);
  sum.add(1, g2);
  SclBounds right = sandwich(g_alone, sum, params);
  rep.right = interval_of(right);
  rep.right.lo += Rational(1, 2);
  if (rep.right.finite_hi) rep.right.hi += Rational(1, 2);

  // left: scl of g1 t g2 t^{-1} in G * <t>, t a fresh letter
  Alphabet ext(alphabet.rank() + 1);
  Letter t = static_cast<Letter>(alphabet.rank() + 1);
  std::vector<Letter> letters = g1.letters();
  letters.push_back(t);
  letters.insert(letters.end(), g2.letters().begin(), g2.letters().end());
  letters.push_back(static_cast<Letter>(-t));
  Word target = Word::reduce(ext, letters);
  GroupPair ext_pair(ext, QuotientSpec::trivial());
  Chain1 ct;
  ct.add(1, target);
  SclBounds left = sandwich(ext_pair, ct, params);
  rep.left = interval_of(left);

  rep.consistent = overlap(rep.left, rep.right);
  rep.detail = "free-product stabilization probe";
  return rep;
}

}  // namespace sclkit
