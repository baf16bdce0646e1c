#ifndef SCLKIT_LP_HPP
#define SCLKIT_LP_HPP

#include <map>
#include <vector>

#include "sclkit/chain.hpp"
#include "sclkit/pair.hpp"
#include "sclkit/rational.hpp"

namespace sclkit {

/// l1-minimization of a 2-chain with prescribed boundary over a finite list
/// of allowed pairs.
struct FillProblem {
  GroupPair pair;
  Chain1 target;
  std::vector<Pair2> support;  // ordered; prime when N != G
  std::vector<Word> rows;      // words touched by the boundaries and target

  FillProblem(GroupPair p, Chain1 t, std::vector<Pair2> s);
};

/// All pairs (g1, g2) with |g1|, |g2|, |g1 g2| <= radius, prime-filtered when
/// N != G, merged with the extras (always kept, so witness chains stay
/// feasible at every radius).
std::vector<Pair2> build_support(const GroupPair& pair, int radius,
                                 const std::vector<Pair2>& extras = {});

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  Chain2 primal;
  std::map<Word, Rational> dual;  // the truncated dual functional psi
};

/// Exact optimum of min sum |coeff| subject to boundary(c') = target over the
/// support, via two-phase simplex with Bland's rule over rationals. The dual
/// comes from the final basis and satisfies |psi(boundary(pair))| <= 1 on the
/// whole support with psi(target) = value.
LpSolution solve_min_l1(const FillProblem& problem);

/// Replays every solution invariant with fresh arithmetic.
bool verify_solution(const FillProblem& problem, const LpSolution& solution);

// Generic standard-form core, exposed for its brute-force oracle tests:
// min cost.x subject to A x = b, x >= 0.
namespace lpcore {

struct Column {
  std::vector<std::pair<int, Rational>> entries;
};

struct Problem {
  int rows = 0;
  std::vector<Column> cols;
  std::vector<Rational> cost;
  std::vector<Rational> rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::vector<Rational> y;
};

Result simplex(const Problem& p);

/// Enumerates basic feasible solutions; oracle for small instances.
Result enumerate_vertices(const Problem& p);

}  // namespace lpcore

}  // namespace sclkit

#endif
