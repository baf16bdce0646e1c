// Timings for the data-parallel kernels against their serial references.
// Build and run: cmake --build build --target bench_kernels && ./build/bench_kernels

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "sclkit/commutator.hpp"
#include "sclkit/lp.hpp"
#include "sclkit/qm.hpp"
#include "sclkit/scl.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace sclkit;

namespace {

double time_once(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const std::string& name, double serial, double parallel, bool agree) {
  std::printf("%-44s %9.3fs %9.3fs %6.2fx  %s\n", name.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, agree ? "match" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("%-44s %10s %10s %7s\n", "kernel", "serial", "parallel", "speedup");

  Alphabet a(2);

  {
    CountingQm q(a, parse_word(a, "aab"));
    long rs = 0, rp = 0;
    double ts = time_once([&] { rs = defect_counting_junction_serial(q); });
    double tp = time_once([&] { rp = defect_counting_junction(q); });
    row("junction defect (base length 3)", ts, tp, rs == rp);
  }
  {
    CountingQm q(a, parse_word(a, "ab"));
    long rs = 0, rp = 0;
    double ts = time_once([&] { rs = defect_counting_brute_serial(q, 7); });
    double tp = time_once([&] { rp = defect_counting_brute(q, 7); });
    row("brute-force defect (pairs up to length 7)", ts, tp, rs == rp);
  }
  {
    GroupPair t(a, QuotientSpec::trivial());
    // a genus-3 target, out of reach at this budget: forces a full table scan
    Word y = power(parse_word(a, "[a,b]"), 4);
    SearchResult rs, rp;
    CommutatorSearcher searcher(t, {2, 5, 2});
    double tp = time_once([&] { rp = searcher.search(y); });
    // the serial reference is the same search with the pool capped to one
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    double ts = time_once([&] { rs = searcher.search(y); });
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
    row("commutator search (full scan, no witness)", ts, tp,
        rs.commutator_count == rp.commutator_count);
  }
  {
    GroupPair t(a, QuotientSpec::trivial());
    Chain1 target;
    target.add(1, parse_word(a, "[a,b]"));
    FillProblem prob(t, target, build_support(t, 4));
    LpSolution sol;
    double ts = time_once([&] { sol = solve_min_l1(prob); });
    std::printf("%-44s %9.3fs %10s %7s  value %s over %zu pairs\n",
                "exact fill (radius 4, sequential)", ts, "-", "-", rational_str(sol.value).c_str(),
                prob.support.size());
  }
  return 0;
}
