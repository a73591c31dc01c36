#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"
#include "shuffle/errors.hpp"
#include "shuffle/standardization.hpp"

using namespace shuffle;
using shuffle::testing::chain;
using shuffle::testing::T;

namespace {

using K = StdVerdict::Kind;

const char* kL = "(\\y.I x) (z (D I)) (I I)";

}  // namespace

TEST_CASE("standard head sequences") {
  StdVerdict one = check_standard_head(Trace(T("D D")));
  CHECK(one.kind == K::StandardHead);
  CHECK(one.split == 0);

  StdVerdict k1 = check_standard_head(chain({"I (D D) I", "I (D D) I", "(\\x.x I) (D D)"}));
  CHECK(format_verdict(k1) == "STANDARD-HEAD k=1");
  CHECK(check_standard_head(chain({"I (D D) I", "(\\x.x I) (D D)"})).split == 0);

  StdVerdict bad = check_standard_head(chain({"I D I", "(\\x.x I) D", "D I"}));
  CHECK(bad.kind == K::NotStandard);
  CHECK(bad.step == 2);
  CHECK(format_verdict(bad) == "NOT-STANDARD @ step 2: head betav step out of order");

  CHECK(check_standard_head(chain({"x (I I)", "x I"})).split == 1);
  CHECK(check_standard_head(chain({"\\x.I I", "\\x.I"})).kind == K::NotStandard);
}

TEST_CASE("standard sequences from the worked example") {
  Trace good = chain({kL, "(\\y.I x) (z (I I)) (I I)", "(\\y.I x) (z I) (I I)", "(\\y.I x (I I)) (z I)",
                      "(\\y.x (I I)) (z I)", "(\\y.x I) (z I)"});
  CHECK(format_verdict(check_standard(good)) == "STANDARD");
  CHECK(check_standard(chain({kL, "(\\y.I x) (z (D I)) I"})).kind == K::Standard);

  StdVerdict v1 = check_standard(chain({kL, "(\\y.I x) (z (D I)) I", "(\\y.x) (z (D I)) I"}));
  CHECK(v1.kind == K::NotStandard);
  CHECK(v1.step == 2);
  StdVerdict v2 = check_standard(chain({kL, "(\\y.I x (I I)) (z (D I))", "(\\y.I x (I I)) (z (I I))"}));
  CHECK(v2.kind == K::NotStandard);
  CHECK(v2.step == 2);
}

TEST_CASE("both orders of head sigma steps are standard") {
  Trace a = chain({"I (D I) I", "(\\x.x I) (D I)", "(\\z.(\\x.x I) (z z)) I"});
  Trace b = chain({"I (D I) I", "(\\z.I (z z)) I I", "(\\z.I (z z) I) I", "(\\z.(\\x.x I) (z z)) I"});
  CHECK(check_standard(a).accepted());
  CHECK(check_standard(b).accepted());
  CHECK(check_standard_head(a).split == 0);
  CHECK(check_standard_head(b).kind == K::NotStandard);
}

TEST_CASE("inner sequences and the plotkin comparison") {
  Trace plotkin = chain({"(\\z.I I) (I I)", "(\\z.I) (I I)", "(\\z.I) I"});
  CHECK(check_standard(plotkin).kind == K::NotStandard);
  CHECK(check_standard(chain({"(\\z.I I) (I I)", "(\\z.I I) I", "(\\z.I) I"})).accepted());

  Trace values = chain({"\\x.D I", "\\x.I I", "\\x.I"});
  CHECK(check_standard_inner(values).kind == K::StandardInner);
  CHECK(check_standard(values).kind == K::Standard);
  Trace backwards = chain({"\\x.(\\y.I I) (D I)", "\\x.(\\y.I) (D I)", "\\x.(\\y.I) (I I)"});
  CHECK(check_standard_inner(backwards).kind == K::NotStandard);
  CHECK(check_standard(backwards).kind == K::NotStandard);
}

TEST_CASE("strict standard sequences") {
  Trace ok = chain({"I D I", "D I", "I I", "I"});
  CHECK(format_verdict(check_strict_standard(ok)) == "STRICT-STANDARD");
  Trace sigma = chain({"I D I", "(\\x.x I) D"});
  CHECK(check_standard(sigma).accepted());
  CHECK(check_strict_standard(sigma).kind == K::NotStandard);
  CHECK(check_strict_standard(Trace(T("\\x.x y"))).kind == K::StrictStandard);
  CHECK(check_strict_standard(Trace(T("D I"))).kind == K::NotStandard);
  Trace loop = chain({"(D D) (I I)", "(D D) I"});
  CHECK(check_standard(loop).accepted());
  CHECK(check_strict_standard(loop).kind == K::NotStandard);
  CHECK(check_strict_standard_head(chain({"I D I", "D I", "I I", "I"})).split == 3);
}

TEST_CASE("checkers reject broken traces") {
  Trace tr(T("I I"));
  tr.steps.push_back(Step{Rule::Sigma1, Path{}, T("x")});
  CHECK_THROWS_AS(check_standard(tr), TraceError);
}

TEST_CASE("sequentialization") {
  SeqSearch same = sequentialize(T("x y"), T("x y"), 4, 100);
  REQUIRE(same.result);
  CHECK(same.result->joined().length() == 0);

  SeqSearch s = sequentialize(T("(\\z.I I) (I I)"), T("(\\z.I) I"), 4, 100);
  REQUIRE(s.result);
  CHECK(s.result->head_betav.length() == 1);
  CHECK(s.result->head_sigma.length() == 0);
  CHECK(s.result->internal.length() == 1);
  CHECK_ALPHA(s.result->head_betav.last(), T("(\\z.I I) I"));

  Term fig = T("(\\y.y') (D (x I)) I");
  Term n0p = T("(\\z.(\\y.y' I) (z z)) (x I)");
  SeqSearch f = sequentialize(fig, n0p, 4, 100);
  REQUIRE(f.result);
  CHECK(f.result->head_betav.length() == 0);
  CHECK(f.result->internal.length() == 0);
  REQUIRE(f.result->head_sigma.length() == 2);
  CHECK_ALPHA(f.result->head_sigma.term_at(1), T("(\\y.y' I) (D (x I))"));
  CHECK_ALPHA(f.result->joined().last(), n0p);

  CHECK_FALSE(sequentialize(T("x"), T("y"), 4, 100).result);
}

TEST_CASE("standardization") {
  Trace in = chain({"I (D I) I", "(\\z.I (z z)) I I", "(\\z.I (z z) I) I", "(\\z.(\\x.x I) (z z)) I"});
  StdSearch out = standardize(in);
  REQUIRE(out.trace);
  validate_trace(*out.trace);
  CHECK(check_standard(*out.trace).accepted());
  CHECK_ALPHA(out.trace->start, in.start);
  CHECK_ALPHA(out.trace->last(), in.last());

  Trace p = chain({"(\\z.I I) (I I)", "(\\z.I) (I I)", "(\\z.I) I"});
  StdSearch sp = standardize(p);
  REQUIRE(sp.trace);
  REQUIRE(sp.trace->length() == 2);
  CHECK_ALPHA(sp.trace->term_at(1), T("(\\z.I I) I"));
  CHECK(check_standard(*sp.trace).accepted());

  StdSearch single = standardize(Trace(T("D D")));
  REQUIRE(single.trace);
  CHECK(single.trace->length() == 0);

  Trace l = chain({kL, "(\\y.I x) (z (D I)) I", "(\\y.x) (z (D I)) I"});
  StdSearch sl = standardize(l);
  REQUIRE(sl.trace);
  CHECK(check_standard(*sl.trace).accepted());
  CHECK_ALPHA(sl.trace->last(), l.last());
}

TEST_CASE("strict normalization") {
  Outcome o = normalize_strict(T("I D I"), 100);
  REQUIRE(o.kind == Outcome::Kind::NormalForm);
  CHECK_ALPHA(o.term, T("I"));
  REQUIRE(o.trace.length() == 3);
  CHECK_ALPHA(o.trace.term_at(1), T("D I"));
  CHECK_ALPHA(o.trace.term_at(2), T("I I"));
  for (const Step& s : o.trace.steps) CHECK(s.rule == Rule::BetaV);
  CHECK(check_strict_standard(o.trace).kind == K::StrictStandard);

  CHECK(normalize_strict(T("(D D) (I I)"), 100).kind == Outcome::Kind::CycleDetected);
  Outcome x = normalize_strict(T("x"), 100);
  CHECK(x.kind == Outcome::Kind::NormalForm);
  CHECK(x.trace.length() == 0);
  CHECK(normalize_strict(T("I D I"), 2).kind == Outcome::Kind::FuelExhausted);

  for (const char* s : {"(\\y.I x) (z (D I)) (I I)", "\\x.I (x (D I))", "x ((\\y.z') (z I)) D", "I (D I) I",
                        "(\\y.y') (D (x I)) I"}) {
    INFO(s);
    Outcome r = normalize_strict(T(s), 1000);
    REQUIRE(r.kind == Outcome::Kind::NormalForm);
    CHECK(successors(r.term, Relation::full()).empty());
    validate_trace(r.trace);
    CHECK(check_strict_standard(r.trace).kind == K::StrictStandard);
    Outcome e = normalize(T(s), Relation::full(), Strategy::Exhaustive, 10000);
    REQUIRE(e.kind == Outcome::Kind::NormalForm);
    CHECK_ALPHA(r.term, e.term);
  }
}

TEST_CASE("strict reachability") {
  CHECK(strict_standard_exists(T("I D I"), T("(\\x.x I) D"), 1000) == Verdict3::No);
  CHECK(strict_standard_exists(T("(D D) (I I)"), T("(D D) I"), 1000) == Verdict3::No);
  CHECK(strict_standard_exists(T("I D I"), T("I"), 1000) == Verdict3::Yes);
  StrictReach r = strict_standard_reachable(T("I D I"), 1000);
  CHECK(r.complete);
  CHECK(r.terms.size() == 1);
  CHECK(strict_standard_exists(T("\\x.I I"), T("\\x.I I"), 1000) == Verdict3::Yes);
  CHECK(strict_standard_exists(T("\\x.I I"), T("\\x.I"), 1000) == Verdict3::Yes);
}
