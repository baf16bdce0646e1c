#ifndef SCLKIT_SCL_HPP
#define SCLKIT_SCL_HPP

#include <optional>
#include <string>
#include <vector>

#include "sclkit/chain.hpp"
#include "sclkit/commutator.hpp"
#include "sclkit/lp.hpp"
#include "sclkit/pair.hpp"
#include "sclkit/qm.hpp"

namespace sclkit {

struct SclParams {
  std::vector<long> powers = {1, 2, 3};
  int radius = 3;
  SearchBudget budget{2, 4, 2};
  int cert_base_len = 2;
  int cert_schreier_len = 2;
  bool use_lp = true;
  bool use_search = true;
};

struct UpperStep {
  long n = 0;
  std::string kind;  // "lp" or "cl"
  Rational raw;      // lp value or commutator count
  Rational bound;    // the resulting upper bound on scl
  int radius = 0;
};

struct UpperBound {
  bool finite = false;
  Rational value;  // meaningful when finite
  std::vector<UpperStep> steps;
};

struct LowerBound {
  Rational value;  // 0 when no certificate applies
  std::string certificate;
  Rational certificate_value;
  Rational certificate_defect;
};

struct SclBounds {
  LowerBound lower;
  UpperBound upper;
  Membership membership = Membership::Unknown;
  std::string membership_detail;
  bool domain_certified = false;  // membership Yes, or an LP fill succeeded
  std::optional<Rational> gap() const {
    if (!upper.finite) return std::nullopt;
    return upper.value - lower.value;
  }
};

/// Certified upper bound on the filling norm: min over n of
/// (truncated fill of c^n + term count) / n. Infeasible powers are skipped;
/// finite = false when every power was infeasible.
UpperBound fl_upper(const GroupPair& pair, const Chain1& c, const SclParams& params);

/// fl_upper / 4, then improved by decomposition bounds (count + m - 1) / n.
UpperBound scl_upper(const GroupPair& pair, const Chain1& c, const SclParams& params);

/// max over certificates of |eval(c)| / (2 defect); certificates with zero
/// defect bound are homomorphisms and excluded.
LowerBound scl_lower(const GroupPair& pair, const Chain1& c,
                     const std::vector<QmCertificate>& certs);

SclBounds sandwich(const GroupPair& pair, const Chain1& c, const SclParams& params,
                   const std::vector<QmCertificate>& certs = {});

struct DualityRatio {
  Chain1 chain;
  Rational value_abs;           // |mu(c)|
  Rational ratio_lower;         // |mu(c)| / upper
  std::optional<Rational> ratio_upper;  // |mu(c)| / lower when lower > 0
  bool consistent = false;      // |mu(c)| <= 2 D U never violated
};

struct DualityReport {
  std::vector<DualityRatio> ratios;
  Rational best_ratio_lower;  // witnessed lower bound for 2 D(mu)
  bool all_consistent = true;
};

/// Probes the defect duality: on every chain, |mu(c)| <= 2 D(mu) scl(c), and
/// the witnessed ratios bracket 2 D(mu) from below.
DualityReport another_duality_check(const GroupPair& pair, const QmCertificate& cert,
                                    const std::vector<Chain1>& chains, const SclParams& params);

struct Interval {
  Rational lo;
  bool finite_hi = false;
  Rational hi;
};

struct HarnessReport {
  bool applicable = false;    // both sides are in the domain of the statement
  bool consistent = false;    // the two bound intervals overlap after scaling
  Interval left, right;       // reported intervals (right already rescaled)
  std::string detail;
};

/// Finite-index transfer: scl of x in G against 1/#Gamma times scl in N of
/// the summed conjugates, computed through the Schreier embedding of N.
HarnessReport harness_finite_index(const GroupPair& pair, const Word& x, const SclParams& params);

/// Free-product stabilization: scl of g1 t g2 t^{-1} in G * <t> against
/// scl_G(g1 + g2) + 1/2.
HarnessReport harness_free_product(const Alphabet& alphabet, const Word& g1, const Word& g2,
                                   const SclParams& params);

}  // namespace sclkit

#endif
