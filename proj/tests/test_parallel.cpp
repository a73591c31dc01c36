#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>

#include "helpers.hpp"
#include "shuffle/parallel.hpp"
#include "shuffle/reduction.hpp"

using namespace shuffle;
using shuffle::testing::T;

namespace {

// Parallel reducts from the binary reading of the rules: the m = 0 instances
// plus closure under application, which together generate the spine rules.
TermSet oracle_par(const Term& m) {
  TermSet out;
  if (m.is_var()) {
    out.insert(m);
    return out;
  }
  if (m.is_abs()) {
    for (const Term& b : oracle_par(m.body())) out.insert(Term::abs(m.name(), b));
    return out;
  }
  const Term& f = m.fun();
  const Term& a = m.arg();
  TermSet pf = oracle_par(f), pa = oracle_par(a);
  for (const Term& f2 : pf)
    for (const Term& a2 : pa) out.insert(Term::app(f2, a2));
  if (f.is_abs() && is_value(a)) {
    for (const Term& b : oracle_par(f.body()))
      for (const Term& v : pa) out.insert(substitute(b, f.name(), v));
  }
  if (f.is_app() && f.fun().is_abs()) {
    Ident x = f.fun().name();
    Term body = f.fun().body();
    if (contains(a.free_vars(), x)) {
      Ident y = Ident::of("fresh_binder");
      body = substitute(body, x, Term::var(y));
      x = y;
    }
    for (const Term& b : oracle_par(body))
      for (const Term& n : oracle_par(f.arg()))
        for (const Term& l : pa) out.insert(Term::app(Term::abs(x, Term::app(b, l)), n));
  }
  if (is_value(f) && a.is_app() && a.fun().is_abs()) {
    Ident x = a.fun().name();
    Term body = a.fun().body();
    if (contains(f.free_vars(), x)) {
      Ident y = Ident::of("fresh_binder");
      body = substitute(body, x, Term::var(y));
      x = y;
    }
    for (const Term& v : pf)
      for (const Term& l : oracle_par(body))
        for (const Term& n : oracle_par(a.arg())) out.insert(Term::app(Term::abs(x, Term::app(v, l)), n));
  }
  return out;
}

bool same_set(const TermSet& a, const TermSet& b) {
  if (a.size() != b.size()) return false;
  for (const Term& t : a)
    if (!b.contains(t)) return false;
  return true;
}

}  // namespace

TEST_CASE("parallel reduction examples") {
  for (const char* s : {"x", "D D", "I (D I) I", "(\\x.a c) ((\\y.b) (z z))", "\\x.x ((\\y.y) x)"}) {
    Term t = T(s);
    auto d = par_check(t, t);
    REQUIRE(d);
    CHECK(derivation_valid(*d));
  }
  auto b = par_check(T("D I"), T("I I"));
  REQUIRE(b);
  CHECK(b->rule == ParRule::BetaV);
  CHECK(derivation_valid(*b));
  CHECK_FALSE(par_check(T("(\\x.a c) ((\\y.b) (z z))"), T("(\\y.(\\x.a) b) (z z) c")));
  CHECK_FALSE(par_check(T("x"), T("y")));
  CHECK_FALSE(par_check(T("I I"), T("x")));
}

TEST_CASE("internal parallel reduction") {
  auto v = par_int_check(T("x"), T("x"));
  REQUIRE(v);
  CHECK(v->rule == ParRule::VarInt);
  CHECK_FALSE(par_int_check(T("I I"), T("I")));
  CHECK(par_check(T("I I"), T("I")));
  auto l = par_int_check(T("\\x.D I"), T("\\x.I I"));
  REQUIRE(l);
  CHECK(l->rule == ParRule::LambdaInt);
  CHECK(derivation_valid(*l));
  auto r = par_int_check(T("(\\z.I I) (I I)"), T("(\\z.I) (I I)"));
  REQUIRE(r);
  CHECK(r->rule == ParRule::RightInt);
  CHECK(derivation_valid(*r));
  CHECK_FALSE(par_int_check(T("(\\z.I I) (I I)"), T("(\\z.I I) I")));
}

TEST_CASE("strong parallel reduction") {
  StrongPar ii = strong_par_check(T("I I"), T("I"), 100);
  CHECK(ii.verdict == Verdict3::Yes);
  REQUIRE(ii.head_betav);
  CHECK(ii.head_betav->length() == 1);
  CHECK(ii.head_sigma->length() == 0);
  CHECK(strong_par_check(T("x"), T("x"), 10).verdict == Verdict3::Yes);
  StrongPar v = strong_par_check(T("\\x.D I"), T("\\x.I I"), 10);
  CHECK(v.verdict == Verdict3::Yes);
  CHECK(v.head_betav->length() == 0);
  CHECK(v.head_sigma->length() == 0);
  CHECK(strong_par_check(T("x"), T("y"), 10).verdict == Verdict3::No);
}

TEST_CASE("parallel reducts") {
  CHECK(par_reducts(T("x")).terms.size() == 1);
  ParReducts di = par_reducts(T("D I"));
  CHECK_FALSE(di.truncated);
  CHECK(same_set(di.terms, oracle_par(T("D I"))));
  CHECK(di.terms.size() == 2);
  CHECK(di.terms.contains(T("I I")));

  Term m = T("(\\x.a) ((\\y.b) (z z)) c");
  Term m1 = T("(\\x.a c) ((\\y.b) (z z))");
  Term m2 = T("(\\y.(\\x.a) b) (z z) c");
  ParReducts pm = par_reducts(m);
  CHECK(pm.terms.contains(m1));
  CHECK(pm.terms.contains(m2));
  ParReducts p1 = par_reducts(m1), p2 = par_reducts(m2);
  for (const Term& t : p1.terms) CHECK_FALSE(p2.terms.contains(t));
}

TEST_CASE("enumeration agrees with the binary oracle and the checker") {
  for (const char* s : {"I (D I) I", "x ((\\y.z') (z I)) D", "(\\y.y') (D (x I)) I", "(\\x.x x) ((\\y.y) z)",
                        "(\\z.I I) (I I)", "(\\x.\\y.x) ((\\u.u) w) (I I)", "x (I ((\\y.y y) z))"}) {
    INFO(s);
    Term t = T(s);
    ParReducts p = par_reducts(t);
    CHECK(same_set(p.terms, oracle_par(t)));
    for (const Term& n : p.terms) {
      auto d = par_check(t, n);
      CHECK(d);
      if (d) CHECK(derivation_valid(*d));
    }
    ParReducts pi = par_int_reducts(t);
    for (const Term& n : pi.terms) CHECK(par_int_check(t, n));
  }
}

TEST_CASE("derivations print as trees") {
  auto d = par_check(T("D I"), T("I I"));
  REQUIRE(d);
  std::string text = format_derivation(*d);
  CHECK(text.rfind("betav: (\\x.x x) (\\x.x) => (\\x.x) (\\x.x)\n", 0) == 0);
  CHECK(text.find("\n  lambda: ") != std::string::npos);
}
