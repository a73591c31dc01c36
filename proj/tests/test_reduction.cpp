#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "shuffle/errors.hpp"
#include "shuffle/graph.hpp"
#include "shuffle/reduction.hpp"
#include "shuffle/trace.hpp"

using namespace shuffle;
using shuffle::testing::T;

namespace {

// Positions spelled by W ::= [] | W M | M W | (\x.W) M, read off the grammar.
std::vector<Path> weak_paths(const Term& t) {
  std::vector<Path> out{Path{}};
  if (!t.is_app()) return out;
  for (const Path& p : weak_paths(t.fun())) out.push_back(Path{0} + p);
  for (const Path& p : weak_paths(t.arg())) out.push_back(Path{1} + p);
  if (t.fun().is_abs())
    for (const Path& p : weak_paths(t.fun().body())) out.push_back(Path{0, 0} + p);
  return out;
}

// S ::= W | \x.S | S M
std::vector<Path> stratified_paths(const Term& t) {
  std::vector<Path> out = weak_paths(t);
  if (t.is_abs())
    for (const Path& p : stratified_paths(t.body())) out.push_back(Path{0} + p);
  if (t.is_app())
    for (const Path& p : stratified_paths(t.fun())) out.push_back(Path{0} + p);
  return out;
}

std::set<std::pair<Path, Rule>> oracle_steps(const Term& t, const std::vector<Path>& paths) {
  std::set<std::pair<Path, Rule>> out;
  for (const Path& p : paths)
    for (Rule r : kAllRules)
      if (match_rule(subterm_at(t, p), r)) out.emplace(p, r);
  return out;
}

std::set<std::pair<Path, Rule>> step_set(const std::vector<Step>& steps) {
  std::set<std::pair<Path, Rule>> out;
  for (const Step& s : steps) out.emplace(s.path, s.rule);
  return out;
}

const char* kFig1 = "(\\y.y') (D (x I)) I";

}  // namespace

TEST_CASE("root rules") {
  CHECK_ALPHA(*match_rule(T("(\\x.x) (z z) y"), Rule::Sigma1), T("(\\x.x y) (z z)"));
  CHECK_ALPHA(*match_rule(T("I ((\\x.x) (z z))"), Rule::Sigma3), T("(\\x.I x) (z z)"));
  CHECK_FALSE(match_rule(T("(\\x.z) (y I)"), Rule::BetaV));
  CHECK_ALPHA(*match_rule(T("D I"), Rule::BetaV), T("I I"));
  // Side conditions force a rename.
  CHECK_ALPHA(*match_rule(T("(\\x.x) (z z) x"), Rule::Sigma1), T("(\\w.w x) (z z)"));
  CHECK_ALPHA(*match_rule(T("x ((\\x.x) z)"), Rule::Sigma3), T("(\\w.x w) z"));
  CHECK_FALSE(match_rule(T("x"), Rule::Sigma1));
  CHECK_FALSE(match_rule(T("(x y) ((\\x.x) z)"), Rule::Sigma3));
}

TEST_CASE("redex positions") {
  Term t = T("D I D");
  CHECK(redex_positions(t, Rule::Sigma1) == std::vector<Path>{Path{}});
  CHECK(redex_positions(t, Rule::BetaV) == std::vector<Path>{Path{0}});
  Term u = T("D (I D) (x I)");
  CHECK(redex_positions(u, Rule::Sigma1) == std::vector<Path>{Path{}});
  CHECK(redex_positions(u, Rule::Sigma3) == std::vector<Path>{Path{0}});
  CHECK(redex_positions(u, Rule::BetaV) == std::vector<Path>{Path{0, 1}});
  for (Rule r : kAllRules) CHECK(redex_positions(T("x"), r).empty());
}

TEST_CASE("contraction") {
  CHECK_ALPHA(contract(T("D I"), Path{}, Rule::BetaV), T("I I"));
  CHECK_ALPHA(contract(T("(\\y.D) (x I) D"), Path{}, Rule::Sigma1), T("(\\y.D D) (x I)"));
  CHECK_ALPHA(contract(T("D ((\\y.D) (x I))"), Path{}, Rule::Sigma3), T("(\\y.D D) (x I)"));
  CHECK_THROWS_AS(contract(T("x y"), Path{}, Rule::BetaV), RedexError);
  CHECK_THROWS_AS(contract(T("x y"), Path{1, 1}, Rule::BetaV), RedexError);
}

TEST_CASE("head redexes") {
  CHECK(head_redexes(T(kFig1)) == std::vector<HeadRedex>{{Path{}, Rule::Sigma1}, {Path{0}, Rule::Sigma3}});
  CHECK(head_redexes(T("I (D I) I")) ==
        std::vector<HeadRedex>{{Path{}, Rule::Sigma1}, {Path{0}, Rule::Sigma3}, {Path{0, 1}, Rule::BetaV}});
  CHECK(head_redexes(T("\\x.D D")).empty());
  CHECK(head_redexes(T("x (I I)")) == std::vector<HeadRedex>{{Path{}, Rule::Sigma3}, {Path{1}, Rule::BetaV}});
  // Nothing under the argument of a stuck application head.
  CHECK(head_redexes(T("(x y) (I I)")).empty());
}

TEST_CASE("head betav is a partial function") {
  CHECK_ALPHA(*step_head_betav(T("D I")), T("I I"));
  CHECK_ALPHA(*step_head_betav(T("I (D I) I")), T("I (I I) I"));
  CHECK_FALSE(step_head_betav(T("(\\y.D) (x I) D")));
  CHECK_FALSE(step_head_betav(T("\\x.I I")));
}

TEST_CASE("successors under the closures") {
  auto hs = successors(T(kFig1), Relation::head_sigma());
  REQUIRE(hs.size() == 2);
  CHECK_ALPHA(hs[0].result, T("(\\y.y' I) (D (x I))"));
  CHECK_ALPHA(hs[1].result, T("(\\z.(\\y.y') (z z)) (x I) I"));
  for (const char* v : {"x", "\\x.D D", "\\x.I I"}) CHECK(successors(T(v), Relation::head_v()).empty());

  Term w = T("(\\y.D D) (x I)");
  auto ws = successors(w, Relation::weak());
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].rule == Rule::BetaV);
  CHECK(ws[0].path == Path{0, 0});
  CHECK_ALPHA(ws[0].result, w);
  CHECK(step_set(ws) == oracle_steps(w, weak_paths(w)));

  CHECK(successors(T("\\x.D D"), Relation::weak()).empty());
  CHECK(successors(T("\\x.D D"), Relation::stratified()).size() == 1);
  CHECK(successors(T("x (\\y.I I)"), Relation::stratified()).empty());
  CHECK(successors(T("(\\z.\\y.I I) x"), Relation::stratified()).size() == 2);
}

TEST_CASE("weak and stratified positions match the context grammars") {
  for (const char* s : {"(\\y.D D) (x I)", "\\x.(\\y.I I) (x \\z.I I)", "(\\x.\\y.I y) (I I) (\\z.D z)",
                        "x ((\\y.\\z.I z) w) (\\u.u I)", "(\\a.(\\b.b I) a) ((\\c.c) (I I))"}) {
    Term t = T(s);
    INFO(s);
    CHECK(step_set(successors(t, Relation::weak())) == oracle_steps(t, weak_paths(t)));
    CHECK(step_set(successors(t, Relation::stratified())) == oracle_steps(t, stratified_paths(t)));
  }
}

TEST_CASE("internal steps are the non-head pairs") {
  Term t = T("(\\z.I I) (I I)");
  auto in = successors(t, Relation::internal_v());
  REQUIRE(in.size() == 1);
  CHECK_ALPHA(in[0].result, T("(\\z.I) (I I)"));
  auto head = successors(t, Relation::head_v());
  REQUIRE(head.size() == 2);
  CHECK(head[0].rule == Rule::Sigma3);
  CHECK_ALPHA(head[1].result, T("(\\z.I I) I"));
  // A non-head occurrence whose result equals a head reduct is not internal.
  Term dup = T("(I I) (I I)");
  for (const Step& s : successors(dup, Relation::internal_v())) CHECK_FALSE(is_head_pair(dup, s.result));
}

TEST_CASE("successor order is by path then rule") {
  auto all = successors(T("I (D I) I"), Relation::full());
  REQUIRE(all.size() == 3);
  CHECK(all[0].rule == Rule::Sigma1);
  CHECK(all[1].rule == Rule::Sigma3);
  CHECK(all[2].rule == Rule::BetaV);
  std::vector<Relation> u = parse_relation("head-sigma+internal-v:sigma1");
  CHECK(std::is_sorted(all.begin(), all.end(), [](const Step& a, const Step& b) {
    return a.path < b.path || (a.path == b.path && a.rule < b.rule);
  }));
  CHECK(u.size() == 2);
}

TEST_CASE("relation names") {
  CHECK(parse_relation("head-v")[0] == Relation::head_v());
  CHECK(parse_relation("full:betav")[0] == Relation::full({Rule::BetaV}));
  CHECK(parse_relation("sigma")[0] == Relation::full(RuleSet::sigma()));
  CHECK(relation_name(Relation::internal_v({Rule::Sigma1})) == "internal-v:sigma1");
  CHECK(relation_name(Relation::weak()) == "weak");
  CHECK_THROWS_AS(parse_relation("sideways"), std::invalid_argument);
  CHECK_THROWS_AS(parse_relation("full:beta"), std::invalid_argument);
}

TEST_CASE("normalization") {
  Outcome o = normalize(T("D D"), Relation::full(), Strategy::Leftmost, 10);
  CHECK(o.kind == Outcome::Kind::CycleDetected);
  CHECK_ALPHA(o.term, T("D D"));

  Outcome m = normalize(T("(\\y.D) (x I) D"), Relation::full(), Strategy::Leftmost, 10);
  CHECK(m.kind == Outcome::Kind::CycleDetected);
  CHECK_ALPHA(m.term, T("(\\y.D D) (x I)"));
  CHECK(m.trace.length() == 2);
  validate_trace(m.trace);

  Outcome s = normalize(T("D I D"), Relation::full(RuleSet::sigma()), Strategy::Exhaustive, 100);
  CHECK(s.kind == Outcome::Kind::NormalForm);
  CHECK(s.graph_complete);
  CHECK_FALSE(s.graph_cyclic);

  Outcome f = normalize(T("I (I (I x))"), Relation::full(), Strategy::Leftmost, 2);
  CHECK(f.kind == Outcome::Kind::FuelExhausted);
  CHECK(f.fuel_spent == 2);

  Outcome e = normalize(T("I (D D)"), Relation::full(), Strategy::Exhaustive, 100);
  CHECK(e.kind == Outcome::Kind::CycleDetected);
  validate_trace(e.trace);
  CHECK_ALPHA(e.trace.last(), e.term);

  Outcome n = normalize(T("(\\x.y) (D I)"), Relation::full(), Strategy::Exhaustive, 100);
  CHECK(n.kind == Outcome::Kind::NormalForm);
  CHECK_ALPHA(n.term, T("y"));
  validate_trace(n.trace);
}

TEST_CASE("trace text round-trips") {
  Outcome o = normalize(T("I D I"), Relation::head_betav(), Strategy::Leftmost, 10);
  std::string text = format_trace(o.trace);
  CHECK(text ==
        "term: (\\x.x) (\\x.x x) (\\x.x)\n"
        "step: betav @ 0 -> (\\x.x x) (\\x.x)\n"
        "step: betav @ e -> (\\x.x) (\\x.x)\n"
        "step: betav @ e -> \\x.x\n");
  Trace back = parse_trace("# comment\n" + text);
  validate_trace(back);
  CHECK(back.length() == 3);
  Trace implicit = parse_trace("term: I D I\nstep: betav @ 0\n");
  CHECK_ALPHA(implicit.last(), T("D I"));
  CHECK_THROWS_AS(validate_trace(parse_trace("term: I I\nstep: betav @ e -> x\n")), TraceError);
  CHECK_THROWS_AS(parse_trace("step: betav @ e -> x\n"), TraceError);
  CHECK_THROWS_AS(parse_trace("term: x\nstep: beta @ e -> x\n"), TraceError);
  CHECK_THROWS_AS(parse_trace("term: x\nstep: betav @ e\n"), TraceError);
}

TEST_CASE("figure graph") {
  std::vector<Relation> rel = parse_relation("head-sigma+internal-v:sigma1");
  ReductionGraph g = reduction_graph(T(kFig1), rel, 100);
  CHECK_FALSE(g.truncated);
  REQUIRE(g.nodes.size() == 5);
  CHECK(g.edges.size() == 5);
  long n0 = g.nodes.find(T("(\\y.y' I) (D (x I))"));
  long n1 = g.nodes.find(T("(\\z.(\\y.y') (z z)) (x I) I"));
  long n0p = g.nodes.find(T("(\\z.(\\y.y' I) (z z)) (x I)"));
  long n1p = g.nodes.find(T("(\\z.(\\y.y') (z z) I) (x I)"));
  CHECK(n0 > 0);
  CHECK(n1 > 0);
  CHECK(n0p > 0);
  CHECK(n1p > 0);
  int internal = 0;
  for (const GraphEdge& e : g.edges) {
    if (!e.head) {
      ++internal;
      CHECK(static_cast<long>(e.from) == n1p);
      CHECK(static_cast<long>(e.to) == n0p);
      CHECK(e.step.rule == Rule::Sigma1);
    }
  }
  CHECK(internal == 1);
  std::string dot = to_dot(g);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("sigma1@0") != std::string::npos);

  ReductionGraph loop = reduction_graph(T("D D"), Relation::full(), 10);
  CHECK(loop.nodes.size() == 1);
  REQUIRE(loop.edges.size() == 1);
  CHECK(loop.edges[0].to == 0);

  ReductionGraph value = reduction_graph(T("\\x.D D"), Relation::head_v(), 10);
  CHECK(value.nodes.size() == 1);
  CHECK(value.edges.empty());

  ReductionGraph capped = reduction_graph(T(kFig1), rel, 2);
  CHECK(capped.truncated);
  CHECK(capped.nodes.size() == 2);
}
