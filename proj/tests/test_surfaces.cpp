#include "sclkit/surface.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace sclkit;
using namespace sclkit::testing;

namespace {

LabelledSurface one_triangle(const Alphabet& a, const char* g, const char* gx, const char* x) {
  LabelledSurface s;
  s.num_vertices = 3;
  s.edges.push_back({0, 1, parse_word(a, g)});   // d2
  s.edges.push_back({1, 2, parse_word(a, x)});   // d0
  s.edges.push_back({0, 2, parse_word(a, gx)});  // d1
  s.triangles.push_back({1, 2, 0});
  return s;
}

std::vector<CommutatorTerm> sample_decomposition(const Alphabet& a, int k) {
  const char* gs[] = {"a", "ab", "bA"};
  const char* xs[] = {"b", "aB", "a"};
  std::vector<CommutatorTerm> dec;
  for (int i = 0; i < k; ++i) dec.push_back({parse_word(a, gs[i]), parse_word(a, xs[i]), Word()});
  return dec;
}

}  // namespace

TEST_CASE("validate accepts a labelled triangle and rejects a perturbed one") {
  Alphabet a(2);
  GroupPair t = f2_trivial();
  LabelledSurface good = one_triangle(a, "a", "ab", "b");
  CHECK(validate(good, &t).empty());

  LabelledSurface bad = good;
  bad.edges[2].label = parse_word(a, "aab");
  auto diags = validate(bad, &t);
  REQUIRE(!diags.empty());
  CHECK(diags.front().triangle == 0);

  // (G, N) condition: neither d0 nor d2 in N
  GroupPair z = f2_z();
  LabelledSurface mixed = one_triangle(a, "a", "aa", "a");
  CHECK(!validate(mixed, &z).empty());
  CHECK(validate(mixed, &t).empty());
}

TEST_CASE("validate flags broken complexes") {
  Alphabet a(2);
  LabelledSurface s = one_triangle(a, "a", "ab", "b");
  s.edges[1].head = 1;  // breaks the endpoint relation
  CHECK(!validate(s).empty());

  LabelledSurface iso = one_triangle(a, "a", "ab", "b");
  iso.num_vertices = 4;  // vertex 3 untouched
  bool found = false;
  for (const auto& d : validate(iso)) found |= (d.vertex == 3);
  CHECK(found);

  // an edge in three triangles
  LabelledSurface over = one_triangle(a, "a", "ab", "b");
  over.triangles.push_back({1, 2, 0});
  over.triangles.push_back({1, 2, 0});
  CHECK(!validate(over).empty());
}

TEST_CASE("disc for the empty decomposition") {
  GroupPair t = f2_trivial();
  LabelledSurface s = build_from_decomposition(t, {});
  CHECK(validate(s, &t).empty());
  SurfaceInvariants inv = invariants(s);
  CHECK(inv.euler == 1);
  CHECK(inv.boundary_count == 1);
  CHECK(inv.components[0].genus == 0);
  CHECK(inv.boundary_words[0].empty());
  CHECK(inv.chi_minus == 1);
}

TEST_CASE("decomposition builder: genus, boundary, Euler count") {
  GroupPair t = f2_trivial();
  Alphabet a = t.alphabet();
  for (int k = 1; k <= 3; ++k) {
    auto dec = sample_decomposition(a, k);
    LabelledSurface s = build_from_decomposition(t, dec);
    CHECK(validate(s, &t).empty());
    SurfaceInvariants inv = invariants(s);
    CHECK(inv.euler == 1 - 2 * k);
    CHECK(inv.boundary_count == 1);
    REQUIRE(inv.components.size() == 1);
    CHECK(inv.components[0].genus == k);
    Word y;
    for (const auto& term : dec) y = multiply(y, commutator(term.g, term.x));
    CHECK(inv.boundary_words[0] == y);
  }
}

TEST_CASE("mixed decomposition builder satisfies the pair condition") {
  GroupPair m2 = f2_mod2();
  Alphabet a = m2.alphabet();
  std::vector<CommutatorTerm> dec = {{parse_word(a, "a"), parse_word(a, "b"), Word()},
                                     {parse_word(a, "ba"), parse_word(a, "aa"), parse_word(a, "b")}};
  LabelledSurface s = build_from_decomposition(m2, dec);
  CHECK(validate(s, &m2).empty());
  CHECK(invariants(s).components[0].genus == 2);
}

TEST_CASE("chi ratio") {
  GroupPair t = f2_trivial();
  Alphabet a = t.alphabet();
  LabelledSurface s1 = build_from_decomposition(t, sample_decomposition(a, 1));
  CHECK(chi_ratio(s1) == Rational(1, 2));
  // genus k with n = 1: (2k - 1)/2
  LabelledSurface s3 = build_from_decomposition(t, sample_decomposition(a, 3));
  CHECK(chi_ratio(s3) == Rational(5, 2));
  // doubling leaves the ratio unchanged
  LabelledSurface dbl = disjoint_union(s1, s1);
  CHECK(*dbl.degree == 2);
  CHECK(chi_ratio(dbl) == Rational(1, 2));
  SurfaceInvariants inv = invariants(dbl);
  CHECK(inv.euler == -2);  // chi adds over disjoint unions
  CHECK(inv.chi_minus == -2);

  LabelledSurface no_data = s1;
  no_data.degree.reset();
  CHECK_THROWS_AS(chi_ratio(no_data), std::invalid_argument);
}

TEST_CASE("split surgery: one boundary into parts") {
  GroupPair t = f2_trivial();
  Alphabet a = t.alphabet();
  LabelledSurface s = build_from_decomposition(t, sample_decomposition(a, 1));
  SurfaceInvariants before = invariants(s);

  SurgeryDelta delta;
  LabelledSurface split = split_boundary(s, 0, {parse_word(a, "ab"), parse_word(a, "AB")}, {}, t,
                                         &delta);
  CHECK(validate(split, &t).empty());
  CHECK(delta.chi == -1);
  CHECK(delta.boundary == 1);
  CHECK(delta.genus == 0);
  SurfaceInvariants after = invariants(split);
  CHECK(after.euler == before.euler + delta.chi);
  CHECK(after.boundary_count == before.boundary_count + delta.boundary);
  CHECK(after.components[0].genus == before.components[0].genus + delta.genus);
  std::vector<Word> words = after.boundary_words;
  std::sort(words.begin(), words.end());
  CHECK(words[0] == parse_word(a, "AB"));
  CHECK(words[1] == parse_word(a, "ab"));

  // with a nontrivial conjugator: abAB = (ab) * a (A^2Ba) a^{-1}
  SurgeryDelta d2;
  LabelledSurface conj = split_boundary(s, 0, {parse_word(a, "ab"), parse_word(a, "A^2Ba")},
                                        {Word(), parse_word(a, "a")}, t, &d2);
  CHECK(validate(conj, &t).empty());
  CHECK(invariants(conj).boundary_count == 2);

  // wrong product is rejected
  CHECK_THROWS_AS(split_boundary(s, 0, {parse_word(a, "ab"), parse_word(a, "ba")}, {}, t, nullptr),
                  std::invalid_argument);
}

TEST_CASE("merge surgery: a-gon attachment") {
  GroupPair t = f2_trivial();
  Alphabet a = t.alphabet();
  // connected genus-2 surface with boundary [a,b]^2, split into two [a,b]'s
  std::vector<CommutatorTerm> dec = {{parse_word(a, "a"), parse_word(a, "b"), Word()},
                                     {parse_word(a, "a"), parse_word(a, "b"), Word()}};
  LabelledSurface s = build_from_decomposition(t, dec);
  Word y = parse_word(a, "[a,b]");
  LabelledSurface split = split_boundary(s, 0, {y, y}, {}, t);
  SurfaceInvariants before = invariants(split);
  REQUIRE(before.boundary_count == 2);

  SurgeryDelta delta;
  LabelledSurface merged = merge_boundaries(split, {0, 1}, t, &delta);
  CHECK(validate(merged, &t).empty());
  CHECK(delta.chi == -1);
  CHECK(delta.boundary == -1);
  CHECK(delta.genus == 1);
  SurfaceInvariants after = invariants(merged);
  CHECK(after.euler == before.euler + delta.chi);
  CHECK(after.boundary_count == before.boundary_count + delta.boundary);
  CHECK(after.components[0].genus == before.components[0].genus + delta.genus);
  CHECK(after.boundary_words[0] == power(y, 2));

  CHECK_THROWS_AS(merge_boundaries(split, {0}, t, nullptr), std::invalid_argument);
}

TEST_CASE("cap surgery: inverse pair removed") {
  GroupPair t = f2_trivial();
  Alphabet a = t.alphabet();
  LabelledSurface s = build_from_decomposition(t, sample_decomposition(a, 1));
  // boundary abAB split into a, b, A, B
  LabelledSurface split = split_boundary(
      s, 0, {parse_word(a, "a"), parse_word(a, "b"), parse_word(a, "A"), parse_word(a, "B")}, {}, t);
  SurfaceInvariants before = invariants(split);
  REQUIRE(before.boundary_count == 4);

  // find the components labelled a and A
  int ia = -1, iA = -1;
  for (int i = 0; i < 4; ++i) {
    if (before.boundary_words[static_cast<size_t>(i)] == parse_word(a, "a")) ia = i;
    if (before.boundary_words[static_cast<size_t>(i)] == parse_word(a, "A")) iA = i;
  }
  REQUIRE(ia >= 0);
  REQUIRE(iA >= 0);
  SurgeryDelta delta;
  LabelledSurface capped = cap_inverse_pair(split, ia, iA, t, &delta);
  CHECK(validate(capped, &t).empty());
  CHECK(delta.chi == -1);
  CHECK(delta.boundary == -1);
  CHECK(delta.genus == 1);
  SurfaceInvariants after = invariants(capped);
  CHECK(after.euler == before.euler + delta.chi);
  CHECK(after.boundary_count == before.boundary_count + delta.boundary);
  CHECK(after.components[0].genus == before.components[0].genus + delta.genus);
  // one boundary is now trivially labelled
  int trivial = 0;
  for (const Word& w : after.boundary_words) trivial += w.empty();
  CHECK(trivial == 1);

  CHECK_THROWS_AS(cap_inverse_pair(split, ia, ia, t, nullptr), std::invalid_argument);
}

TEST_CASE("consolidate surgery: multi-edge boundary to one edge") {
  GroupPair t = f2_trivial();
  LabelledSurface disc = build_from_decomposition(t, {});
  SurfaceInvariants before = invariants(disc);
  SurgeryDelta delta;
  LabelledSurface out = consolidate_boundary(disc, 0, t, &delta);
  CHECK(validate(out, &t).empty());
  CHECK(delta.chi == 0);
  CHECK(delta.boundary == 0);
  CHECK(delta.genus == 0);
  SurfaceInvariants after = invariants(out);
  CHECK(after.euler == before.euler);
  CHECK(after.boundary_count == before.boundary_count);

  // splitting with a conjugator then re-consolidating a conjugated part
  Alphabet a = t.alphabet();
  LabelledSurface s1 = build_from_decomposition(t, sample_decomposition(a, 1));
  CHECK_THROWS_AS(consolidate_boundary(s1, 0, t, nullptr), std::invalid_argument);
}

TEST_CASE("self-identified triangle faces are rejected") {
  Alphabet a(2);
  LabelledSurface s;
  s.num_vertices = 2;
  s.edges.push_back({0, 1, parse_word(a, "a")});
  s.edges.push_back({1, 1, parse_word(a, "e")});
  s.triangles.push_back({1, 0, 0});  // d1 = d2
  CHECK(!validate(s).empty());
}
