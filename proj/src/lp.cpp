#include "sclkit/lp.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

namespace sclkit {

namespace lpcore {

namespace {

struct Tableau {
  const Problem& p;
  int m;
  std::vector<Column> art_cols;           // artificial identity columns
  std::vector<int> basis;                 // column ids; >= n means artificial
  std::vector<std::vector<Rational>> binv;
  std::vector<Rational> xb;

  explicit Tableau(const Problem& prob) : p(prob), m(prob.rows) {}

  const Column& col(int j) const {
    int n = static_cast<int>(p.cols.size());
    return j < n ? p.cols[static_cast<size_t>(j)] : art_cols[static_cast<size_t>(j - n)];
  }

  std::vector<Rational> apply_binv(const Column& c) const {
    std::vector<Rational> d(static_cast<size_t>(m), Rational(0));
    for (const auto& [row, val] : c.entries)
      for (int i = 0; i < m; ++i) {
        const Rational& b = binv[static_cast<size_t>(i)][static_cast<size_t>(row)];
        if (b != 0) d[static_cast<size_t>(i)] += b * val;
      }
    return d;
  }

  Rational price(const std::vector<Rational>& y, const Column& c) const {
    Rational acc = 0;
    for (const auto& [row, val] : c.entries) acc += y[static_cast<size_t>(row)] * val;
    return acc;
  }

  void pivot(int leave_pos, int enter, const std::vector<Rational>& d) {
    Rational piv = d[static_cast<size_t>(leave_pos)];
    auto& row = binv[static_cast<size_t>(leave_pos)];
    for (Rational& v : row) v /= piv;
    xb[static_cast<size_t>(leave_pos)] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave_pos) continue;
      const Rational& f = d[static_cast<size_t>(i)];
      if (f == 0) continue;
      auto& ri = binv[static_cast<size_t>(i)];
      for (int j = 0; j < m; ++j)
        if (row[static_cast<size_t>(j)] != 0)
          ri[static_cast<size_t>(j)] -= f * row[static_cast<size_t>(j)];
      xb[static_cast<size_t>(i)] -= f * xb[static_cast<size_t>(leave_pos)];
    }
    basis[static_cast<size_t>(leave_pos)] = enter;
  }

  // Bland's rule; returns false when no entering column exists (optimal).
  // allowed(j) limits the entering set.
  template <typename CostFn, typename AllowedFn>
  Status iterate(CostFn cost_of, AllowedFn allowed) {
    int n_total = static_cast<int>(p.cols.size() + art_cols.size());
    while (true) {
      std::vector<Rational> cb(static_cast<size_t>(m));
      for (int i = 0; i < m; ++i) cb[static_cast<size_t>(i)] = cost_of(basis[static_cast<size_t>(i)]);
      // y = cb . binv
      std::vector<Rational> y(static_cast<size_t>(m), Rational(0));
      for (int i = 0; i < m; ++i) {
        if (cb[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < m; ++j) {
          const Rational& b = binv[static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (b != 0) y[static_cast<size_t>(j)] += cb[static_cast<size_t>(i)] * b;
        }
      }
      std::vector<bool> is_basic(static_cast<size_t>(n_total), false);
      for (int b : basis) is_basic[static_cast<size_t>(b)] = true;
      int enter = -1;
      for (int j = 0; j < n_total; ++j) {
        if (is_basic[static_cast<size_t>(j)] || !allowed(j)) continue;
        if (cost_of(j) - price(y, col(j)) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;
      std::vector<Rational> d = apply_binv(col(enter));
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < m; ++i) {
        if (d[static_cast<size_t>(i)] <= 0) continue;
        Rational ratio = xb[static_cast<size_t>(i)] / d[static_cast<size_t>(i)];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter, d);
    }
  }
};

}  // namespace

Result simplex(const Problem& p) {
  int m = p.rows;
  int n = static_cast<int>(p.cols.size());
  Problem work = p;
  // normalize rhs >= 0, remembering the flips for the duals
  std::vector<int> sign(static_cast<size_t>(m), 1);
  for (int i = 0; i < m; ++i)
    if (work.rhs[static_cast<size_t>(i)] < 0) {
      sign[static_cast<size_t>(i)] = -1;
      work.rhs[static_cast<size_t>(i)] = -work.rhs[static_cast<size_t>(i)];
    }
  for (Column& c : work.cols)
    for (auto& [row, val] : c.entries)
      if (sign[static_cast<size_t>(row)] < 0) val = -val;

  Tableau t(work);
  t.art_cols.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) t.art_cols[static_cast<size_t>(i)].entries = {{i, Rational(1)}};
  t.basis.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) t.basis[static_cast<size_t>(i)] = n + i;
  t.binv.assign(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(m), Rational(0)));
  for (int i = 0; i < m; ++i) t.binv[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  t.xb = work.rhs;

  // Phase 1
  auto phase1_cost = [&](int j) { return j >= n ? Rational(1) : Rational(0); };
  Status s1 = t.iterate(phase1_cost, [](int) { return true; });
  if (s1 == Status::Unbounded) return {Status::Unbounded, Rational(0), {}, {}};
  Rational infeas = 0;
  for (int i = 0; i < m; ++i)
    if (t.basis[static_cast<size_t>(i)] >= n) infeas += t.xb[static_cast<size_t>(i)];
  if (infeas != 0) return {Status::Infeasible, Rational(0), {}, {}};

  // Drive remaining artificials out where a real pivot exists.
  for (int i = 0; i < m; ++i) {
    if (t.basis[static_cast<size_t>(i)] < n) continue;
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> d = t.apply_binv(t.col(j));
      if (d[static_cast<size_t>(i)] != 0) {
        bool basic = false;
        for (int b : t.basis) basic |= (b == j);
        if (basic) continue;
        t.pivot(i, j, d);
        break;
      }
    }
  }

  // Phase 2; any artificial still basic sits on a redundant row at value
  // zero and is simply barred from the entering set.
  auto phase2_cost = [&](int j) {
    return j >= n ? Rational(0) : p.cost[static_cast<size_t>(j)];
  };
  Status s2 = t.iterate(phase2_cost, [&](int j) { return j < n; });
  if (s2 == Status::Unbounded) return {Status::Unbounded, Rational(0), {}, {}};

  Result res;
  res.status = Status::Optimal;
  res.x.assign(static_cast<size_t>(n), Rational(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[static_cast<size_t>(i)] < n)
      res.x[static_cast<size_t>(t.basis[static_cast<size_t>(i)])] = t.xb[static_cast<size_t>(i)];
  res.value = 0;
  for (int j = 0; j < n; ++j) res.value += p.cost[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];
  // y = c_B B^{-1}, then undo the row flips
  std::vector<Rational> cb(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) cb[static_cast<size_t>(i)] = phase2_cost(t.basis[static_cast<size_t>(i)]);
  res.y.assign(static_cast<size_t>(m), Rational(0));
  for (int i = 0; i < m; ++i) {
    if (cb[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < m; ++j) {
      const Rational& b = t.binv[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (b != 0) res.y[static_cast<size_t>(j)] += cb[static_cast<size_t>(i)] * b;
    }
  }
  for (int i = 0; i < m; ++i)
    if (sign[static_cast<size_t>(i)] < 0) res.y[static_cast<size_t>(i)] = -res.y[static_cast<size_t>(i)];
  return res;
}

Result enumerate_vertices(const Problem& p) {
  // Solves the exactly determined system of every independent column subset
  // of size <= rows; exponential, used as an oracle on tiny instances only.
  int m = p.rows;
  int n = static_cast<int>(p.cols.size());
  Result best;
  best.status = Status::Infeasible;

  std::vector<std::vector<Rational>> dense(static_cast<size_t>(n),
                                           std::vector<Rational>(static_cast<size_t>(m), Rational(0)));
  for (int j = 0; j < n; ++j)
    for (const auto& [row, val] : p.cols[static_cast<size_t>(j)].entries)
      dense[static_cast<size_t>(j)][static_cast<size_t>(row)] = val;

  std::vector<int> comb;
  auto try_subset = [&]() {
    int k = static_cast<int>(comb.size());
    // augmented m x (k+1) system A_S x = b
    std::vector<std::vector<Rational>> a(static_cast<size_t>(m),
                                         std::vector<Rational>(static_cast<size_t>(k + 1)));
    for (int i = 0; i < m; ++i) {
      for (int c = 0; c < k; ++c)
        a[static_cast<size_t>(i)][static_cast<size_t>(c)] =
            dense[static_cast<size_t>(comb[static_cast<size_t>(c)])][static_cast<size_t>(i)];
      a[static_cast<size_t>(i)][static_cast<size_t>(k)] = p.rhs[static_cast<size_t>(i)];
    }
    std::vector<int> pivot_row(static_cast<size_t>(k), -1);
    int rank = 0;
    for (int c = 0; c < k; ++c) {
      int piv = -1;
      for (int r = rank; r < m; ++r)
        if (a[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return;  // dependent columns: not a vertex basis
      std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(piv)]);
      for (int r = 0; r < m; ++r) {
        if (r == rank || a[static_cast<size_t>(r)][static_cast<size_t>(c)] == 0) continue;
        Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                     a[static_cast<size_t>(rank)][static_cast<size_t>(c)];
        for (int cc = c; cc <= k; ++cc)
          a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
              f * a[static_cast<size_t>(rank)][static_cast<size_t>(cc)];
      }
      pivot_row[static_cast<size_t>(c)] = rank;
      ++rank;
    }
    for (int r = rank; r < m; ++r)
      if (a[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) return;  // inconsistent
    Rational value = 0;
    std::vector<Rational> x(static_cast<size_t>(n), Rational(0));
    for (int c = 0; c < k; ++c) {
      int r = pivot_row[static_cast<size_t>(c)];
      Rational xv = a[static_cast<size_t>(r)][static_cast<size_t>(k)] /
                    a[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (xv < 0) return;
      x[static_cast<size_t>(comb[static_cast<size_t>(c)])] = xv;
      value += p.cost[static_cast<size_t>(comb[static_cast<size_t>(c)])] * xv;
    }
    if (best.status != Status::Optimal || value < best.value) {
      best.status = Status::Optimal;
      best.value = value;
      best.x = x;
    }
  };

  std::function<void(int)> rec = [&](int start) {
    try_subset();
    if (static_cast<int>(comb.size()) == m) return;
    for (int j = start; j < n; ++j) {
      comb.push_back(j);
      rec(j + 1);
      comb.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace lpcore

FillProblem::FillProblem(GroupPair p, Chain1 t, std::vector<Pair2> s)
    : pair(std::move(p)), target(std::move(t)), support(std::move(s)) {
  std::set<Word> row_set;
  for (const Pair2& pr : support) {
    if (!pair.n_equals_g() && !is_prime_pair(pair, pr.first, pr.second))
      throw std::invalid_argument("support pair is not prime for the pair (G, N)");
    row_set.insert(pr.first);
    row_set.insert(pr.second);
    row_set.insert(multiply(pr.first, pr.second));
  }
  for (const auto& [w, q] : target.terms()) {
    (void)q;
    row_set.insert(w);
  }
  rows.assign(row_set.begin(), row_set.end());
}

std::vector<Pair2> build_support(const GroupPair& pair, int radius,
                                 const std::vector<Pair2>& extras) {
  if (radius < 1) throw std::invalid_argument("radius >= 1 required");
  std::set<Pair2> out(extras.begin(), extras.end());
  std::vector<Word> words = enumerate_words(pair.alphabet(), radius);
  for (const Word& g1 : words)
    for (const Word& g2 : words) {
      if (multiply(g1, g2).length() > radius) continue;
      if (!pair.n_equals_g() && !is_prime_pair(pair, g1, g2)) continue;
      out.insert({g1, g2});
    }
  if (!pair.n_equals_g())
    for (const Pair2& e : extras)
      if (!is_prime_pair(pair, e.first, e.second))
        throw std::invalid_argument("extra support pair is not prime");
  return {out.begin(), out.end()};
}

LpSolution solve_min_l1(const FillProblem& problem) {
  std::map<Word, int> row_of;
  for (size_t i = 0; i < problem.rows.size(); ++i)
    row_of[problem.rows[i]] = static_cast<int>(i);

  lpcore::Problem p;
  p.rows = static_cast<int>(problem.rows.size());
  p.rhs.assign(problem.rows.size(), Rational(0));
  for (const auto& [w, q] : problem.target.terms()) p.rhs[static_cast<size_t>(row_of.at(w))] = q;

  for (const Pair2& pr : problem.support) {
    std::map<int, Rational> entries;
    entries[row_of.at(pr.second)] += 1;
    entries[row_of.at(multiply(pr.first, pr.second))] -= 1;
    entries[row_of.at(pr.first)] += 1;
    lpcore::Column plus, minus;
    for (const auto& [r, v] : entries) {
      if (v == 0) continue;
      plus.entries.push_back({r, v});
      minus.entries.push_back({r, -v});
    }
    p.cols.push_back(plus);
    p.cost.push_back(1);
    p.cols.push_back(minus);
    p.cost.push_back(1);
  }

  lpcore::Result r = lpcore::simplex(p);
  LpSolution sol;
  if (r.status != lpcore::Status::Optimal) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.value = r.value;
  for (size_t i = 0; i < problem.support.size(); ++i) {
    Rational net = r.x[2 * i] - r.x[2 * i + 1];
    if (net != 0) sol.primal.add(net, problem.support[i]);
  }
  for (size_t i = 0; i < problem.rows.size(); ++i) sol.dual[problem.rows[i]] = r.y[i];
  if (!verify_solution(problem, sol)) throw std::logic_error("simplex returned an invalid optimum");
  return sol;
}

bool verify_solution(const FillProblem& problem, const LpSolution& solution) {
  if (solution.status != LpStatus::Optimal) return false;
  if (boundary(solution.primal) != problem.target) return false;
  if (l1_norm(solution.primal) != solution.value) return false;
  for (const auto& [pr, q] : solution.primal.terms()) {
    (void)q;
    if (std::find(problem.support.begin(), problem.support.end(), pr) == problem.support.end())
      return false;
  }
  auto psi = [&](const Chain1& c) {
    Rational acc = 0;
    for (const auto& [w, q] : c.terms()) {
      auto it = solution.dual.find(w);
      if (it == solution.dual.end()) return std::optional<Rational>();
      acc += q * it->second;
    }
    return std::optional<Rational>(acc);
  };
  for (const Pair2& pr : problem.support) {
    auto v = psi(boundary_pair(pr.first, pr.second));
    if (!v || rational_abs(*v) > 1) return false;
  }
  auto tv = psi(problem.target);
  if (!tv || *tv != solution.value) return false;
  return true;
}

}  // namespace sclkit
