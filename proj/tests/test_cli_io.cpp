#include "sclkit/config_io.hpp"

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "sclkit/qm.hpp"
#include "test_support.hpp"

using namespace sclkit;
using namespace sclkit::testing;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/sclkit_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("pair config from json") {
  Json j = Json::parse(R"({"rank": 2, "quotient": {"kind": "finite", "images": [[1,0],[0,1]]}})");
  GroupPair p = pair_from_json(j);
  CHECK(p.kind() == QuotientSpec::Kind::Finite);
  CHECK(p.quotient_order() == 2);

  Json fa = Json::parse(R"({"rank": 2, "quotient": {"kind": "free_abelian", "images": [[1],[0]]}})");
  CHECK(pair_from_json(fa).kind() == QuotientSpec::Kind::FreeAbelian);

  Json trivial = Json::parse(R"({"rank": 2})");
  CHECK(pair_from_json(trivial).n_equals_g());

  CHECK_THROWS_AS(pair_from_json(Json::parse(R"({"rank": 2, "quotient": {"kind": "weird"}})")),
                  std::invalid_argument);
}

TEST_CASE("pair config from the toml subset") {
  TempFile f("pair.toml", R"(
# the mod-2 pair
rank = 2

[quotient]
kind = "finite"
images = [[1, 0], [0, 1]]
)");
  GroupPair p = load_pair(f.path);
  CHECK(p.kind() == QuotientSpec::Kind::Finite);
  CHECK(p.quotient_order() == 2);
  CHECK(p.in_N(parse_word(p.alphabet(), "aa")));

  TempFile g("pair2.toml", R"(
rank = 2
[quotient]
kind = "free_abelian"
images = [
  [1],
  [0],
]
)");
  CHECK(load_pair(g.path).kind() == QuotientSpec::Kind::FreeAbelian);
}

TEST_CASE("chain file round trip") {
  Alphabet a(2);
  Json j = Json::parse(R"([["3/2", "ab"], ["-1", "[a,b]"], [2, "e"]])");
  Chain1 c = chain_from_json(j, a);
  CHECK(c.coeff(parse_word(a, "ab")) == Rational(3, 2));
  CHECK(c.coeff(parse_word(a, "[a,b]")) == -1);
  CHECK(c.coeff(Word()) == 2);

  // parse, print, parse again: identical chain
  Json round = chain_to_json(a, c);
  CHECK(chain_from_json(round, a) == c);
  CHECK(chain_to_json(a, chain_from_json(round, a)) == round);
}

TEST_CASE("surface file round trip") {
  GroupPair t = f2_trivial();
  Alphabet a = t.alphabet();
  LabelledSurface s =
      build_from_decomposition(t, {{parse_word(a, "a"), parse_word(a, "b"), Word()}});
  Json j = surface_to_json(a, s);
  LabelledSurface back = surface_from_json(j, a);
  CHECK(validate(back, &t).empty());
  CHECK(surface_to_json(a, back) == j);
  CHECK(invariants(back).components[0].genus == 1);
}

TEST_CASE("lift file") {
  TempFile f("lift.json", R"({"breakpoints": [["0", "1/4"], ["1/2", "3/4"]]})");
  CircleLift h = load_lift(f.path);
  CHECK(h(Rational(0)) == Rational(1, 4));
}

TEST_CASE("lp certificate replay") {
  GroupPair t = f2_trivial();
  Alphabet a = t.alphabet();
  Chain1 target;
  target.add(1, parse_word(a, "[a,b]"));
  Word g = parse_word(a, "a"), x = parse_word(a, "b");
  std::vector<Pair2> extras = {{commutator(g, x), multiply(x, g)}, {g, x}, {x, g}};
  FillProblem prob(t, target, build_support(t, 2, extras));
  LpSolution sol = solve_min_l1(prob);
  REQUIRE(sol.status == LpStatus::Optimal);

  Json cert = lp_certificate_to_json(a, prob, sol);
  auto [prob2, sol2] = lp_certificate_from_json(cert);
  CHECK(verify_solution(prob2, sol2));

  // tampering is caught on replay
  Json bad = cert;
  bad["value"] = "7/2";
  auto [prob3, sol3] = lp_certificate_from_json(bad);
  CHECK_FALSE(verify_solution(prob3, sol3));
}
