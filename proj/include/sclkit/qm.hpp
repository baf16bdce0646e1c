#ifndef SCLKIT_QM_HPP
#define SCLKIT_QM_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sclkit/chain.hpp"
#include "sclkit/pair.hpp"
#include "sclkit/rational.hpp"
#include "sclkit/word.hpp"

namespace sclkit {

/// Antisymmetrized counting quasimorphism: counts occurrences of the base
/// word minus occurrences of its inverse, so eval_raw(g^{-1}) = -eval_raw(g)
/// holds by construction.
struct CountingQm {
  Alphabet alphabet;
  Word base;  // reduced, nonempty

  CountingQm(Alphabet a, Word w);
};

/// Number of indices i with g[i..i+|w|) = w.
int count_subword(const Word& w, const Word& g);

long eval_raw(const CountingQm& q, const Word& g);

/// Exact value of lim eval_raw(g^n)/n, via the cyclically reduced core and
/// the stabilized per-period difference.
Rational homogenize_counting(const CountingQm& q, const Word& g);

/// Exact defect of the raw counting quasimorphism. All coboundary values
/// delta(g1, g2) are realized by junction configurations g1 = u c,
/// g2 = c^{-1} v with |u|, |v| < |base| and |c| <= 2|base|: contributions of
/// occurrences interior to u, v or the cancelled block cancel (the block by
/// antisymmetry), so only windows crossing one of the three junctions
/// matter, and those see at most |base| - 1 letters on each side.
long defect_counting_junction(const CountingQm& q);
long defect_counting_junction_serial(const CountingQm& q);

/// Independent check: sup of |delta| over all reduced pairs up to max_len.
long defect_counting_brute(const CountingQm& q, int max_len);
long defect_counting_brute_serial(const CountingQm& q, int max_len);

enum class DefectKind { Exact, CertifiedBound, Empirical };
enum class Invariance { Plain, GInvariantOnN };

/// A homogeneous quasimorphism with a certified defect upper bound. Immutable
/// and freely shareable.
struct QmCertificate {
  std::string name;
  std::function<Rational(const Word&)> eval;
  Rational defect_upper;
  DefectKind defect_kind = DefectKind::CertifiedBound;
  Invariance invariance = Invariance::Plain;
  std::function<bool(const Word&)> domain_check;  // null = all of G
  std::string provenance;

  bool in_domain(const Word& g) const { return !domain_check || domain_check(g); }
};

struct DefectResult {
  Rational value;
  DefectKind kind;
};

DefectResult defect_counting(const CountingQm& q);

/// Certificate whose evaluator is the homogenization and whose defect bound
/// is twice the exact raw defect (zero raw defect means a homomorphism and
/// the bound is exact).
QmCertificate make_certificate(const CountingQm& q);

/// Linear evaluation; throws if a support word is outside the certificate's
/// domain.
Rational evaluate_on_chain(const QmCertificate& cert, const Chain1& c);

/// View a certificate on G as a G-invariant certificate on N.
QmCertificate restrict_to_N(const GroupPair& pair, const QmCertificate& cert);

/// Counting certificate on N itself (finite quotients), over the Schreier
/// generators. Not G-invariant in general.
QmCertificate counting_certificate_on_N(const GroupPair& pair, const Word& base_in_schreier);

/// mu'(x) = average of mu(b x b^{-1}) over coset representatives; finite
/// quotients only. Homogeneous, G-invariant, defect bound unchanged.
QmCertificate invariant_average(const GroupPair& pair, const QmCertificate& cert);

/// N-quasimorphism psi with psi|_N = mu, built from a set-theoretic section;
/// |psi(gx) - psi(g) - psi(x)| and the xg variant stay within mu's defect
/// bound for homogeneous G-invariant mu.
struct NQmExtension {
  std::function<Rational(const Word&)> eval;
  Rational defect_bound;  // D'' certificate
  std::string name;
};

NQmExtension extend_N_quasimorphism(const GroupPair& pair, const QmCertificate& cert,
                                    const std::map<int, Rational>& tail_values = {});

/// Extension of a G-invariant certificate on N to all of G through a virtual
/// section, with defect bound doubled. Exact closed form for finite
/// quotients: eval(g) = mu(g^d)/d with d the order of p(g).
QmCertificate extend_virtual_section(const GroupPair& pair, const QmCertificate& cert);

struct RatInterval {
  Rational lo, hi;
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

/// Virtual-section extension for an infinite cyclic quotient: certified
/// interval of width 2*defect/n around the homogenization.
RatInterval extend_virtual_section_interval(const GroupPair& pair, const QmCertificate& cert,
                                            const Word& g, long n);

/// Sampled lower bound for the quasi-invariance deviation
/// sup |eval(g x g^{-1}) - eval(x)|; zero for exactly invariant evaluators.
Rational sampled_quasi_invariance(const GroupPair& pair, const QmCertificate& cert, int samples,
                                  unsigned long seed);

/// Default certificate family for a pair: counting certificates on G with
/// base length <= max_base_len (restricted to N when N != G), plus, for
/// finite quotients, invariant averages of Schreier-alphabet counting
/// certificates with base length <= max_schreier_len.
std::vector<QmCertificate> auto_certificates(const GroupPair& pair, int max_base_len = 2,
                                             int max_schreier_len = 2);

}  // namespace sclkit

#endif
