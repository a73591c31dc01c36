#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"
#include "shuffle/analysis.hpp"
#include "shuffle/graph.hpp"

using namespace shuffle;
using shuffle::testing::T;

namespace {

const char* kM = "(\\y.D) (x I) D";
const char* kN = "D ((\\y.D) (x I))";

}  // namespace

TEST_CASE("halting") {
  Analysis ii = halts(T("I I"), 100);
  CHECK(ii.verdict == Verdict3::Yes);
  CHECK_ALPHA(*ii.value, T("I"));
  CHECK(ii.trace->length() == 1);
  Analysis dd = halts(T("D D"), 100);
  CHECK(dd.verdict == Verdict3::No);
  CHECK(dd.witness.rfind("cycle", 0) == 0);
  Analysis m = halts(T(kM), 100);
  CHECK(m.verdict == Verdict3::No);
  CHECK(m.witness.rfind("stuck", 0) == 0);
  CHECK(halts(T("I D I"), 1).verdict == Verdict3::Unknown);
}

TEST_CASE("head v evaluation") {
  Term t = T("I (D I) I");
  Analysis a = head_v_eval(t, 1000);
  REQUIRE(a.verdict == Verdict3::Yes);
  CHECK_ALPHA(*a.value, T("I"));
  // Every head v normal form reachable from t is I.
  ReductionGraph g = reduction_graph(t, Relation::head_v(), 1000);
  REQUIRE_FALSE(g.truncated);
  std::vector<bool> has_out(g.nodes.size(), false);
  for (const GraphEdge& e : g.edges) has_out[e.from] = true;
  std::size_t sinks = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (!has_out[i]) {
      ++sinks;
      CHECK_ALPHA(g.nodes[i], T("I"));
    }
  CHECK(sinks == 1);

  Analysis v = head_v_eval(T("\\x.D D"), 10);
  CHECK(v.verdict == Verdict3::Yes);
  CHECK(v.trace->length() == 0);
  CHECK(head_v_eval(T(kM), 100).verdict == Verdict3::No);
  CHECK(head_v_eval(T(kN), 100).verdict == Verdict3::No);
}

TEST_CASE("observational equivalence sampling") {
  Analysis sep = obs_equiv_sample(T("I"), T("D D"), 50, 3, 100);
  CHECK(sep.verdict == Verdict3::No);
  CHECK(sep.witness == "context []");
  CHECK(obs_equiv_sample(T("I"), T("I"), 200, 5, 100).verdict == Verdict3::Unknown);
  CHECK(obs_equiv_sample(T(kM), T("D D"), 300, 5, 200).verdict == Verdict3::Unknown);
  CHECK(obs_equiv_sample(T(kN), T("D D"), 300, 5, 200).verdict == Verdict3::Unknown);
  CHECK_ALPHA(plug(Term::abs("x", Term::var(hole())), T("x")), T("\\x.x"));
}

TEST_CASE("potential valuability and solvability") {
  CHECK(potentially_valuable(T("x"), 100).verdict == Verdict3::Yes);
  CHECK(potentially_valuable(T(kM), 100).verdict == Verdict3::No);
  CHECK(potentially_valuable(T(kN), 100).verdict == Verdict3::No);
  // No weak position lies under an unapplied abstraction.
  CHECK(successors(T("\\x.D D"), Relation::weak()).empty());
  CHECK(potentially_valuable(T("\\x.D D"), 100).verdict == Verdict3::Yes);

  CHECK(solvable(T("I"), 100).verdict == Verdict3::Yes);
  auto s = successors(T("\\x.D D"), Relation::stratified());
  REQUIRE(s.size() == 1);
  CHECK_ALPHA(s[0].result, T("\\x.D D"));
  CHECK(solvable(T("\\x.D D"), 100).verdict == Verdict3::No);
  CHECK(solvable(T("\\z.(\\u.z) (z z)"), 100).verdict == Verdict3::Yes);
  CHECK(solvable(T(kM), 100).verdict == Verdict3::No);
}

TEST_CASE("betav oracles") {
  Analysis xi = betav_pv_oracle(T("x I"), 5, 2000);
  CHECK(xi.verdict == Verdict3::Yes);
  CHECK(xi.witness == "x := \\x.x");
  CHECK(betav_pv_oracle(T("I"), 5, 2000).verdict == Verdict3::Yes);
  CHECK(betav_pv_oracle(T(kM), 4, 2000).verdict == Verdict3::Unknown);
  CHECK(betav_pv_oracle(T("D D"), 4, 2000).verdict == Verdict3::No);

  CHECK(betav_solv_oracle(T("I"), 2, 4, 2000).verdict == Verdict3::Yes);
  Analysis x = betav_solv_oracle(T("x"), 2, 4, 2000);
  CHECK(x.verdict == Verdict3::Yes);
  CHECK(x.witness == "arguments: none");
  Analysis xy = betav_solv_oracle(T("x y"), 2, 4, 2000);
  CHECK(xy.verdict == Verdict3::Yes);
  CHECK(xy.witness == "arguments: (\\x.x)");
  CHECK(betav_solv_oracle(T(kM), 1, 4, 2000).verdict == Verdict3::Unknown);
  CHECK(betav_solv_oracle(T("D D"), 1, 3, 2000).verdict == Verdict3::No);
  CHECK(betav_solv_oracle(T("\\x.D D"), 2, 4, 2000).verdict == Verdict3::Unknown);
}
