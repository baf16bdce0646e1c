#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "sclkit/finite_quotient.hpp"

namespace sclkit::detail {

namespace {

std::vector<std::vector<BigInt>> identity_matrix(size_t n) {
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithResult smith_normal_form(std::vector<std::vector<BigInt>> a, bool track_left,
                              bool track_right) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  SmithResult res;
  if (track_left) res.left = identity_matrix(rows);
  if (track_right) res.right = identity_matrix(cols);

  auto swap_rows = [&](size_t i, size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (track_left) std::swap(res.left[i], res.left[j]);
  };
  auto swap_cols = [&](size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    if (track_right)
      for (size_t r = 0; r < cols; ++r) std::swap(res.right[r][i], res.right[r][j]);
  };
  auto add_row = [&](size_t dst, size_t src, const BigInt& f) {  // row dst += f * row src
    for (size_t c = 0; c < cols; ++c) a[dst][c] += f * a[src][c];
    if (track_left)
      for (size_t c = 0; c < rows; ++c) res.left[dst][c] += f * res.left[src][c];
  };
  auto add_col = [&](size_t dst, size_t src, const BigInt& f) {  // col dst += f * col src
    for (size_t r = 0; r < rows; ++r) a[r][dst] += f * a[r][src];
    if (track_right)
      for (size_t r = 0; r < cols; ++r) res.right[r][dst] += f * res.right[r][src];
  };
  auto negate_row = [&](size_t i) {
    for (size_t c = 0; c < cols; ++c) a[i][c] = -a[i][c];
    if (track_left)
      for (size_t c = 0; c < rows; ++c) res.left[i][c] = -res.left[i][c];
  };

  size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero |entry| in the trailing block
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        add_row(i, t, -q);
        if (a[i][t] != 0) {  // smaller remainder becomes the pivot
          swap_rows(t, i);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        add_col(j, t, -q);
        if (a[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (clean) {
        // divisibility: fold in a row containing a non-multiple of the pivot
        for (size_t i = t + 1; i < rows && clean; ++i)
          for (size_t j = t + 1; j < cols && clean; ++j)
            if (a[i][j] % a[t][t] != 0) {
              add_row(t, i, 1);
              clean = false;
            }
      }
    }
    if (a[t][t] < 0) negate_row(t);
    ++t;
  }
  for (size_t i = 0; i < t; ++i) res.diag.push_back(a[i][i]);
  return res;
}

std::shared_ptr<const MixedClassData> build_mixed_class_data(const GroupPair& pair,
                                                             const FiniteQuotient& q,
                                                             const std::vector<Word>& reps) {
  auto data = std::make_shared<MixedClassData>();
  int rank = pair.alphabet().rank();
  int n = q.order();
  data->schreier_id.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(rank), 0));
  for (int r = 0; r < n; ++r) {
    for (int g = 1; g <= rank; ++g) {
      Word gen = Word::from_reduced({static_cast<Letter>(g)});
      int target = q.mul(r, q.gen(g - 1));
      Word s = multiply(multiply(reps[static_cast<size_t>(r)], gen),
                        inverse(reps[static_cast<size_t>(target)]));
      if (!s.empty()) {
        data->generator_words.push_back(s);
        data->schreier_id[static_cast<size_t>(r)][static_cast<size_t>(g - 1)] =
            static_cast<int>(data->generator_words.size());
      }
    }
  }
  data->schreier_rank = static_cast<int>(data->generator_words.size());

  // Coinvariant relations: conjugating a Schreier generator by a generator of
  // G must not move its class.
  size_t rn = static_cast<size_t>(data->schreier_rank);
  std::vector<std::vector<BigInt>> relations;
  for (int g = 1; g <= rank; ++g) {
    Word gen = Word::from_reduced({static_cast<Letter>(g)});
    for (size_t s = 0; s < rn; ++s) {
      Word conj = conjugate(gen, data->generator_words[s]);
      Word rw = schreier_rewrite(pair, q, *data, conj);
      std::vector<BigInt> row(rn, 0);
      for (Letter l : rw.letters()) row[static_cast<size_t>(std::abs(l) - 1)] += (l > 0 ? 1 : -1);
      row[s] -= 1;
      if (std::any_of(row.begin(), row.end(), [](const BigInt& v) { return v != 0; }))
        relations.push_back(std::move(row));
    }
  }
  if (relations.empty()) relations.emplace_back(rn, 0);
  SmithResult snf = smith_normal_form(std::move(relations), false, true);
  data->diag = snf.diag;
  data->basis = snf.right;
  for (const BigInt& d : data->diag)
    if (d != 1) data->invariants.push_back(d);
  for (size_t i = data->diag.size(); i < rn; ++i) data->invariants.push_back(0);
  return data;
}

Word schreier_rewrite(const GroupPair& pair, const FiniteQuotient& q, const MixedClassData& data,
                      const Word& g) {
  (void)pair;
  std::vector<Letter> out;
  int coset = 0;
  for (Letter l : g.letters()) {
    int gi = q.gen(std::abs(l) - 1);
    if (l > 0) {
      int id = data.schreier_id[static_cast<size_t>(coset)][static_cast<size_t>(l - 1)];
      if (id != 0) out.push_back(static_cast<Letter>(id));
      coset = q.mul(coset, gi);
    } else {
      int prev = q.mul(coset, q.inv(gi));
      int id = data.schreier_id[static_cast<size_t>(prev)][static_cast<size_t>(-l - 1)];
      if (id != 0) out.push_back(static_cast<Letter>(-id));
      coset = prev;
    }
  }
  if (coset != 0) throw std::invalid_argument("element is not in N");
  std::vector<Letter> reduced(out.size());
  int len = kernel::reduce_into(out.data(), static_cast<int>(out.size()), reduced.data());
  reduced.resize(static_cast<size_t>(len));
  return Word::from_reduced(std::move(reduced));
}

MixedClass class_of_vector(const MixedClassData& data, const std::vector<BigInt>& v) {
  size_t rn = static_cast<size_t>(data.schreier_rank);
  MixedClass cls;
  cls.canon.assign(rn, 0);
  // v in the Smith basis, then residues against the invariant factors.
  for (size_t j = 0; j < rn; ++j) {
    BigInt acc = 0;
    for (size_t i = 0; i < rn; ++i) acc += v[i] * data.basis[i][j];
    cls.canon[j] = acc;
  }
  for (size_t j = 0; j < data.diag.size(); ++j) {
    BigInt d = data.diag[j];
    if (d != 0) {
      cls.canon[j] %= d;
      if (cls.canon[j] < 0) cls.canon[j] += d;
    }
  }
  return cls;
}

MixedClass class_of(const MixedClassData& data, const Word& rewritten) {
  std::vector<BigInt> v(static_cast<size_t>(data.schreier_rank), 0);
  for (Letter l : rewritten.letters()) v[static_cast<size_t>(std::abs(l) - 1)] += (l > 0 ? 1 : -1);
  return class_of_vector(data, v);
}

MixedClass zero_class(const MixedClassData& data) {
  MixedClass cls;
  cls.canon.assign(static_cast<size_t>(data.schreier_rank), 0);
  return cls;
}

}  // namespace sclkit::detail
