#include "shuffle/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "shuffle/analysis.hpp"
#include "shuffle/errors.hpp"
#include "shuffle/graph.hpp"
#include "shuffle/parallel.hpp"
#include "shuffle/reduction.hpp"
#include "shuffle/standardization.hpp"
#include "shuffle/syntax.hpp"

namespace shuffle {

void CheckResult::merge(const CheckResult& other) {
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  inconclusive += other.inconclusive;
  checked += other.checked;
}

namespace {

// Head betav chains in the search-based properties stop after this many steps.
constexpr std::size_t kChainBound = 64;
constexpr std::size_t kReductCap = 5000;
constexpr std::size_t kGraphCap = 2000;

std::string p(const Term& t) { return print(t); }

Relation betav_full() { return Relation::full({Rule::BetaV}); }
Relation sigma_full() { return Relation::full(RuleSet::sigma()); }

bool has_cycle(const ReductionGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  for (const GraphEdge& e : g.edges) adj[e.from].push_back(e.to);
  std::vector<std::uint8_t> color(adj.size(), 0);
  for (std::size_t root = 0; root < adj.size(); ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i == adj[v].size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      std::size_t w = adj[v][i++];
      if (color[w] == 1) return true;
      if (color[w] == 0) {
        color[w] = 1;
        stack.emplace_back(w, 0);
      }
    }
  }
  return false;
}

// The head betav chain from m; complete when it ended in a head betav normal
// term or came back to a term already on it.
struct Chain {
  std::vector<Term> terms;
  bool complete = false;
  std::vector<std::optional<TermSet>> closures;

  const TermSet& closure(std::size_t i) {
    if (closures.size() < terms.size()) closures.resize(terms.size());
    if (!closures[i]) closures[i] = head_sigma_closure(terms[i]);
    return *closures[i];
  }
};

Chain betav_chain(const Term& m, std::size_t bound) {
  Chain c;
  TermSet seen;
  Term cur = m;
  for (std::size_t i = 0;; ++i) {
    if (!seen.insert(cur)) {
      c.complete = true;
      return c;
    }
    c.terms.push_back(cur);
    std::optional<Term> next = step_head_betav(cur);
    if (!next) {
      c.complete = true;
      return c;
    }
    if (i == bound) return c;
    cur = *next;
  }
}

// M ⊸βv^k L' ⊸σ* L'' =>int target with k >= min_betav.
Verdict3 factor_search(Chain& chain, std::size_t min_betav, const Term& target) {
  for (std::size_t i = min_betav; i < chain.terms.size(); ++i)
    for (const Term& k : chain.closure(i))
      if (par_int_check(k, target)) return Verdict3::Yes;
  return chain.complete ? Verdict3::No : Verdict3::Unknown;
}

void tally(CheckResult& r, Verdict3 v, const std::string& what) {
  ++r.checked;
  if (v == Verdict3::No) r.fail(what);
  if (v == Verdict3::Unknown) ++r.inconclusive;
}

CheckResult prop_commutation(const Term& m, const RunOptions&) {
  CheckResult r;
  std::optional<Term> lp = step_head_betav(m);
  for (const Step& l : successors(m, Relation::head_sigma()))
    for (const Step& n : successors(l.result, Relation::head_betav())) {
      ++r.checked;
      bool ok = false;
      if (lp) {
        ok = alpha_eq(*lp, n.result);
        for (const Step& s : successors(*lp, Relation::head_sigma())) ok = ok || alpha_eq(s.result, n.result);
      }
      if (!ok) r.fail("M = " + p(m) + "; L = " + p(l.result) + "; N = " + p(n.result));
    }
  return r;
}

CheckResult prop_commutation_star(const Term& m, const RunOptions& o) {
  CheckResult r;
  ReductionGraph g = reduction_graph(m, Relation::head_v(), std::min(o.fuel, kGraphCap));
  if (g.truncated) ++r.inconclusive;
  Chain chain = betav_chain(m, kChainBound);
  TermSet reach;
  for (std::size_t i = 0; i < chain.terms.size(); ++i)
    for (const Term& t : chain.closure(i)) reach.insert(t);
  for (const Term& t : g.nodes) {
    ++r.checked;
    if (reach.contains(t)) continue;
    if (chain.complete)
      r.fail("M = " + p(m) + "; M' = " + p(t));
    else
      ++r.inconclusive;
  }
  return r;
}

CheckResult prop_key_lemma(const Term& m, const RunOptions& o) {
  CheckResult r;
  ParReducts ps = par_reducts(m, kReductCap);
  if (ps.truncated) ++r.inconclusive;
  for (const Term& n : ps.terms)
    tally(r, strong_par_check(m, n, o.fuel).verdict, "M = " + p(m) + "; N = " + p(n));
  return r;
}

CheckResult prop_postponement_step(const Term& m, const RunOptions&) {
  CheckResult r;
  ParReducts ls = par_int_reducts(m, kReductCap);
  if (ls.truncated) ++r.inconclusive;
  std::optional<Term> mb = step_head_betav(m);
  std::vector<Step> ms = successors(m, Relation::head_sigma());
  for (const Term& l : ls.terms) {
    if (std::optional<Term> n = step_head_betav(l)) {
      ++r.checked;
      if (!mb || !par_check(*mb, *n)) r.fail("betav: M = " + p(m) + "; L = " + p(l) + "; N = " + p(*n));
    }
    for (const Step& n : successors(l, Relation::head_sigma())) {
      ++r.checked;
      bool ok = std::any_of(ms.begin(), ms.end(), [&](const Step& s) { return par_check(s.result, n.result).has_value(); });
      if (!ok) r.fail("sigma: M = " + p(m) + "; L = " + p(l) + "; N = " + p(n.result));
    }
  }
  return r;
}

CheckResult prop_postponement(const Term& m, const RunOptions&) {
  CheckResult r;
  ParReducts ls = par_int_reducts(m, kReductCap);
  if (ls.truncated) ++r.inconclusive;
  Chain chain = betav_chain(m, kChainBound);
  for (const Term& l : ls.terms) {
    if (std::optional<Term> n = step_head_betav(l))
      tally(r, factor_search(chain, 1, *n), "betav: M = " + p(m) + "; L = " + p(l) + "; N = " + p(*n));
    for (const Step& n : successors(l, Relation::head_sigma()))
      tally(r, factor_search(chain, 0, n.result), "sigma: M = " + p(m) + "; L = " + p(l) + "; N = " + p(n.result));
  }
  return r;
}

CheckResult prop_value_lemmas(const Term& m, const RunOptions& o) {
  CheckResult r;
  auto expect = [&](bool ok, const std::string& what) {
    ++r.checked;
    if (!ok) r.fail(what);
  };
  bool value = is_value(m);
  if (value) expect(successors(m, Relation::head_betav()).empty(), "value has a head betav step: " + p(m));
  for (const Step& s : successors(m, Relation::head_sigma())) {
    expect(!value, "value has a head sigma step: " + p(m));
    expect(!is_value(s.result), "head sigma step to a value: " + p(m) + " -> " + p(s.result));
  }

  ParReducts ints = par_int_reducts(m, kReductCap);
  ParReducts pars = par_reducts(m, kReductCap);
  if (ints.truncated || pars.truncated) ++r.inconclusive;
  for (const Term& n : ints.terms) {
    if (n.is_var()) expect(alpha_eq(m, n), "internal reduct is a variable: " + p(m) + " =>int " + p(n));
    if (n.is_abs()) {
      bool ok = m.is_abs();
      if (ok) {
        auto [bm, bn] = open_common(m, n);
        ok = par_check(bm, bn).has_value();
      }
      expect(ok, "internal reduct is an abstraction: " + p(m) + " =>int " + p(n));
    }
    if (value) expect(par_check(m, n).has_value(), "value: " + p(m) + " =>int " + p(n) + " but not =>");
  }
  Ident x = Ident::of("x");
  Term lm = Term::abs(x, m);
  for (const Term& n : pars.terms) {
    Term ln = Term::abs(x, n);
    std::string pair = p(m) + " => " + p(n);
    expect(par_check(lm, ln).has_value(), "abstraction loses =>: " + pair);
    expect(par_int_check(lm, ln).has_value(), "abstraction loses =>int: " + pair);
    tally(r, strong_par_check(lm, ln, o.fuel).verdict, "abstraction loses strong =>: " + pair);
    if (value) {
      expect(par_int_check(m, n).has_value(), "value: " + pair + " but not =>int");
      tally(r, strong_par_check(m, n, o.fuel).verdict, "value: " + pair + " but not strong");
    }
  }
  return r;
}

// Searches a path of at most twice the source size; each rule node of a
// parallel derivation is one step.
void path_exists(CheckResult& r, const Term& from, const Term& to, const Relation& rel, const std::string& what) {
  ++r.checked;
  SearchLimits limits{2 * from.size() + 2, 20000};
  PathSearch s = find_path(from, to, rel, limits);
  if (s.trace) return;
  if (s.exhausted)
    r.fail(what);
  else
    ++r.inconclusive;
}

// Steps at positions that hold no head redex: the occurrence reading of
// internal steps, used only to annotate failures.
bool reachable_by_inner_occurrences(const Term& from, const Term& to, std::size_t depth) {
  TermSet seen;
  seen.insert(from);
  std::vector<Term> frontier{from};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Term> next;
    for (const Term& t : frontier) {
      std::vector<HeadRedex> heads = head_redexes(t);
      for (const Step& s : successors(t, Relation::full())) {
        if (std::find(heads.begin(), heads.end(), HeadRedex{s.path, s.rule}) != heads.end()) continue;
        if (alpha_eq(s.result, to)) return true;
        if (seen.insert(s.result)) next.push_back(s.result);
      }
    }
    frontier = std::move(next);
  }
  return false;
}

CheckResult prop_inclusions(const Term& m, const RunOptions&) {
  CheckResult r;
  for (const Step& s : successors(m, Relation::full())) {
    ++r.checked;
    if (!par_check(m, s.result)) r.fail("-> but not =>: " + p(m) + " -> " + p(s.result));
  }
  for (const Step& s : successors(m, Relation::internal_v())) {
    ++r.checked;
    if (!par_int_check(m, s.result)) r.fail("->int but not =>int: " + p(m) + " -> " + p(s.result));
  }
  ParReducts pars = par_reducts(m, kReductCap);
  ParReducts ints = par_int_reducts(m, kReductCap);
  if (ints.truncated || pars.truncated) ++r.inconclusive;
  for (const Term& n : pars.terms) path_exists(r, m, n, Relation::full(), "=> but not ->*: " + p(m) + " => " + p(n));
  for (const Term& n : ints.terms) {
    std::size_t before = r.failures.size();
    path_exists(r, m, n, Relation::internal_v(), "=>int but not ->int*: " + p(m) + " => " + p(n));
    if (r.failures.size() > before && reachable_by_inner_occurrences(m, n, 2 * m.size() + 2))
      r.failures.back() += " (reachable by steps at non-head occurrences)";
  }
  return r;
}

CheckResult prop_reflexivity(const Term& m, const RunOptions& o) {
  CheckResult r;
  r.checked = 3;
  if (!par_check(m, m)) r.fail("not M => M: " + p(m));
  if (!par_int_check(m, m)) r.fail("not M =>int M: " + p(m));
  if (strong_par_check(m, m, o.fuel).verdict != Verdict3::Yes) r.fail("not strong M => M: " + p(m));
  return r;
}

// Every ->v path of length <= 4 from m, depth first, children in successor order.
template <typename F>
void for_each_path(const Term& m, std::size_t max_len, F&& f) {
  std::vector<Trace> stack{Trace(m)};
  while (!stack.empty()) {
    Trace tr = std::move(stack.back());
    stack.pop_back();
    f(tr);
    if (tr.length() == max_len) continue;
    std::vector<Step> next = successors(tr.last(), Relation::full());
    for (auto it = next.rbegin(); it != next.rend(); ++it) {
      Trace longer = tr;
      longer.steps.push_back(*it);
      stack.push_back(std::move(longer));
    }
  }
}

std::string path_text(const Trace& tr) {
  std::string s = p(tr.start);
  for (const Step& st : tr.steps) s += " -> " + p(st.result);
  return s;
}

constexpr std::size_t kPathLength = 4;

std::size_t search_bound(const Trace& tr) { return 4 * std::max<std::size_t>(1, tr.length()); }

CheckResult prop_sequentialization(const Term& m, const RunOptions& o) {
  CheckResult r;
  for_each_path(m, kPathLength, [&](const Trace& tr) {
    ++r.checked;
    SeqSearch s = sequentialize(m, tr.last(), search_bound(tr), o.fuel);
    if (!s.result) {
      r.fail("no factorization: " + path_text(tr));
      return;
    }
    const Factorization& f = *s.result;
    bool ok = true;
    for (std::size_t i = 0; i < f.head_betav.length(); ++i)
      ok = ok && is_head_betav_pair(f.head_betav.term_at(i), f.head_betav.term_at(i + 1));
    for (std::size_t i = 0; i < f.head_sigma.length(); ++i)
      ok = ok && is_head_sigma_pair(f.head_sigma.term_at(i), f.head_sigma.term_at(i + 1));
    for (std::size_t i = 0; i < f.internal.length(); ++i)
      ok = ok && !is_head_pair(f.internal.term_at(i), f.internal.term_at(i + 1));
    Trace j = f.joined();
    validate_trace(j);
    ok = ok && alpha_eq(j.start, m) && alpha_eq(j.last(), tr.last());
    if (!ok) r.fail("bad factorization: " + path_text(tr));
  });
  return r;
}

CheckResult prop_standardization(const Term& m, const RunOptions& o) {
  CheckResult r;
  for_each_path(m, kPathLength, [&](const Trace& tr) {
    ++r.checked;
    StdSearch s = standardize(tr, o.fuel);
    if (!s.trace) {
      r.fail("no standard sequence: " + path_text(tr));
      return;
    }
    validate_trace(*s.trace);
    bool ok = check_standard(*s.trace).accepted() && alpha_eq(s.trace->start, m) && alpha_eq(s.trace->last(), tr.last());
    if (!ok) r.fail("rejected standard sequence for: " + path_text(tr));
  });
  return r;
}

CheckResult prop_confluence(const Term& m, const RunOptions&) {
  CheckResult r;
  const std::pair<const char*, Relation> rels[] = {{"v", Relation::full()}, {"betav", betav_full()}, {"sigma", sigma_full()}};
  for (const auto& [name, rel] : rels) {
    std::vector<Step> next = successors(m, rel);
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = i + 1; j < next.size(); ++j) {
        ++r.checked;
        JoinResult jr = joinable(next[i].result, next[j].result, rel, 6, kGraphCap);
        if (jr.joined) continue;
        if (jr.complete)
          r.fail(std::string(name) + ": " + p(m) + " -> " + p(next[i].result) + " | " + p(next[j].result));
        else
          ++r.inconclusive;
      }
  }
  return r;
}

CheckResult prop_sigma_termination(const Term& m, const RunOptions& o) {
  CheckResult r;
  ++r.checked;
  ReductionGraph g = reduction_graph(m, sigma_full(), std::max(o.fuel, kGraphCap));
  if (has_cycle(g))
    r.fail("sigma cycle from " + p(m));
  else if (g.truncated)
    ++r.inconclusive;
  return r;
}

CheckResult prop_value_preservation(const Term& m, const RunOptions&) {
  CheckResult r;
  for (const Step& s : successors(m, Relation::full())) {
    ++r.checked;
    if (!is_value(m)) {
      if (s.rule != Rule::BetaV && is_value(s.result)) r.fail("sigma step to a value: " + p(m) + " -> " + p(s.result));
      continue;
    }
    bool ok = m.is_abs() && s.result.is_abs();
    if (ok) {
      auto [bm, bn] = open_common(m, s.result);
      std::vector<Step> inner = successors(bm, Relation::full());
      ok = std::any_of(inner.begin(), inner.end(), [&](const Step& b) { return alpha_eq(b.result, bn); });
    }
    if (!ok) r.fail("value reduct not a body step: " + p(m) + " -> " + p(s.result));
  }
  return r;
}

CheckResult prop_head_determinism(const Term& m, const RunOptions&) {
  CheckResult r;
  ++r.checked;
  std::vector<Step> hs = successors(m, Relation::head_betav());
  std::optional<Term> one = step_head_betav(m);
  bool ok = hs.size() <= 1 && hs.empty() == !one && (hs.empty() || alpha_eq(hs[0].result, *one));
  if (!ok) r.fail("head betav not deterministic at " + p(m));
  return r;
}

CheckResult prop_adequacy(const Term& m, const RunOptions& o) {
  CheckResult r;
  Analysis hm = halts(m, o.fuel);
  for (const Step& s : successors(m, Relation::full())) {
    ++r.checked;
    Analysis hn = halts(s.result, o.fuel);
    if (hm.verdict == Verdict3::Unknown || hn.verdict == Verdict3::Unknown)
      ++r.inconclusive;
    else if (hm.verdict != hn.verdict)
      r.fail(p(m) + " -> " + p(s.result) + ": halts " + std::string(verdict_name(hm.verdict)) + " vs " +
             std::string(verdict_name(hn.verdict)));
  }
  return r;
}

CheckResult prop_cor_value(const Term& m, const RunOptions& o) {
  CheckResult r;
  Analysis h = halts(m, o.fuel);
  ReductionGraph full = reduction_graph(m, Relation::full(), kGraphCap);
  for (const Term& v : full.nodes) {
    if (!is_value(v)) continue;
    ++r.checked;
    if (h.verdict == Verdict3::Unknown) {
      ++r.inconclusive;
      continue;
    }
    if (h.verdict == Verdict3::No) {
      r.fail("reaches value " + p(v) + " but head betav evaluation fails: " + p(m));
      continue;
    }
    PathSearch s = find_path(*h.value, v, Relation::internal_v(), SearchLimits{static_cast<std::size_t>(-1), 20000});
    if (s.trace) continue;
    if (s.exhausted)
      r.fail("no internal path from " + p(*h.value) + " to " + p(v) + " for " + p(m));
    else
      ++r.inconclusive;
  }

  ReductionGraph head = reduction_graph(m, Relation::head_v(), kGraphCap);
  for (const Term& v : head.nodes) {
    if (!is_value(v)) continue;
    ++r.checked;
    if (h.verdict == Verdict3::Yes && !alpha_eq(*h.value, v))
      r.fail("head v value " + p(v) + " differs from head betav value " + p(*h.value) + " for " + p(m));
    if (h.verdict == Verdict3::No) r.fail("head v reaches " + p(v) + " but head betav fails: " + p(m));
    if (h.verdict == Verdict3::Unknown) ++r.inconclusive;
  }

  ++r.checked;
  try {
    Analysis e = head_v_eval(m, o.fuel);
    if (e.verdict == Verdict3::Yes && h.verdict == Verdict3::Yes && !alpha_eq(*e.value, *h.value))
      r.fail("head v evaluation value differs for " + p(m));
  } catch (const ConsistencyError& err) {
    r.fail(std::string(err.what()));
  }
  return r;
}

CheckResult prop_head_normalization(const Term& m, const RunOptions& o) {
  CheckResult r;
  ++r.checked;
  Outcome b = normalize(m, Relation::head_betav(), Strategy::Leftmost, o.fuel);
  Verdict3 betav = b.kind == Outcome::Kind::NormalForm      ? Verdict3::Yes
                   : b.kind == Outcome::Kind::CycleDetected ? Verdict3::No
                                                            : Verdict3::Unknown;
  ReductionGraph g = reduction_graph(m, Relation::head_v(), kGraphCap);
  bool normal = std::any_of(g.nodes.begin(), g.nodes.end(),
                            [](const Term& t) { return successors(t, Relation::head_v()).empty(); });
  Verdict3 weak = normal ? Verdict3::Yes : g.truncated ? Verdict3::Unknown : Verdict3::No;
  bool cyclic = has_cycle(g);
  Verdict3 strong = cyclic ? Verdict3::No : g.truncated ? Verdict3::Unknown : Verdict3::Yes;
  std::vector<Verdict3> decided;
  for (Verdict3 v : {betav, weak, strong})
    if (v != Verdict3::Unknown) decided.push_back(v);
  if (decided.size() < 3) ++r.inconclusive;
  if (std::adjacent_find(decided.begin(), decided.end(), std::not_equal_to<>()) != decided.end())
    r.fail(p(m) + ": head betav " + std::string(verdict_name(betav)) + ", head v " + std::string(verdict_name(weak)) +
           ", strongly head v " + std::string(verdict_name(strong)));
  return r;
}

constexpr std::size_t kOracleValSize = 5;
constexpr std::size_t kOracleArgs = 2;
constexpr std::size_t kOracleArgSize = 5;
constexpr std::size_t kOracleFuel = 2000;

void compare(CheckResult& r, const Term& m, const char* what, const Analysis& a, const Analysis& oracle) {
  ++r.checked;
  if (a.verdict == Verdict3::Unknown || oracle.verdict == Verdict3::Unknown) {
    ++r.inconclusive;
    return;
  }
  if (a.verdict != oracle.verdict)
    r.fail(std::string(what) + " " + p(m) + ": " + std::string(verdict_name(a.verdict)) + " vs oracle " +
           std::string(verdict_name(oracle.verdict)) + " (" + oracle.witness + ")");
}

CheckResult prop_conservativity(const Term& m, const RunOptions& o) {
  CheckResult r;
  compare(r, m, "potentially valuable", potentially_valuable(m, o.fuel), betav_pv_oracle(m, kOracleValSize, kOracleFuel));
  compare(r, m, "solvable", solvable(m, o.fuel), betav_solv_oracle(m, kOracleArgs, kOracleArgSize, kOracleFuel));
  return r;
}

CheckResult prop_strict_normalization(const Term& m, const RunOptions& o) {
  CheckResult r;
  Outcome e = normalize(m, Relation::full(), Strategy::Exhaustive, o.fuel);
  if (e.kind != Outcome::Kind::NormalForm) return r;
  ++r.checked;
  Outcome s = normalize_strict(m, o.fuel);
  if (s.kind == Outcome::Kind::FuelExhausted) {
    ++r.inconclusive;
    return r;
  }
  if (s.kind != Outcome::Kind::NormalForm || !alpha_eq(s.term, e.term))
    r.fail(p(m) + ": strict " + std::string(outcome_name(s.kind)) + " " + p(s.term) + " vs normal form " + p(e.term));
  return r;
}

CheckResult prop_soundness_sample(const Term& m, const RunOptions& o) {
  CheckResult r;
  for (const Step& s : successors(m, Relation::full())) {
    ++r.checked;
    Analysis a = obs_equiv_sample(m, s.result, 20, 4, o.fuel);
    if (a.verdict == Verdict3::No) r.fail(p(m) + " -> " + p(s.result) + " separated by " + a.witness);
  }
  return r;
}

CheckResult prop_diamond_failure(const Term&, const RunOptions&) {
  CheckResult r;
  Term m = parse("(\\x.a) ((\\y.b) (z z)) c");
  Term m1 = parse("(\\x.a c) ((\\y.b) (z z))");
  Term m2 = parse("(\\y.(\\x.a) b) (z z) c");
  ParReducts pm = par_reducts(m);
  r.checked = 3;
  if (!pm.terms.contains(m1) || !pm.terms.contains(m2)) r.fail("missing reduct of " + p(m));
  ParReducts p1 = par_reducts(m1), p2 = par_reducts(m2);
  if (p1.truncated || p2.truncated) r.fail("reduct sets truncated");
  for (const Term& t : p1.terms)
    if (p2.terms.contains(t)) r.fail("common reduct " + p(t));
  return r;
}

CheckResult sigma_order(std::size_t which) {
  CheckResult r;
  SigmaOrderFixture f = sigma_order_fixtures().at(which);
  SigmaOrderCheck c = check_sigma_order(f);
  r.checked = 2;
  if (!c.displayed_exists)
    r.fail(std::string(rule_name(f.first)) + ";" + std::string(rule_name(f.second)) + " sequence missing from " + p(f.m));
  if (c.reordered_exists)
    r.fail(std::string(rule_name(f.second)) + "*;" + std::string(rule_name(f.first)) + "* reaches " + p(f.n));
  return r;
}

CheckResult prop_figure_graph(const Term&, const RunOptions&) {
  CheckResult r;
  Term n = parse("(\\y.y') (D (x I)) I");
  Term n0 = parse("(\\y.y' I) (D (x I))");
  Term n1 = parse("(\\z.(\\y.y') (z z)) (x I) I");
  Term n0p = parse("(\\z.(\\y.y' I) (z z)) (x I)");
  Term n1p = parse("(\\z.(\\y.y') (z z) I) (x I)");
  const Relation rels[] = {Relation::head_sigma(), Relation::internal_v({Rule::Sigma1})};
  ReductionGraph g = reduction_graph(n, rels, 100);
  r.checked = 2;
  TermSet want;
  for (const Term& t : {n, n0, n1, n0p, n1p}) want.insert(t);
  bool nodes_ok = !g.truncated && g.nodes.size() == want.size();
  for (const Term& t : g.nodes) nodes_ok = nodes_ok && want.contains(t);
  if (!nodes_ok) r.fail("node set differs from the five expected terms");
  // from, to, rule, head
  struct E {
    const Term* from;
    const Term* to;
    Rule rule;
    bool head;
  };
  const E edges[] = {{&n, &n0, Rule::Sigma1, true},
                     {&n, &n1, Rule::Sigma3, true},
                     {&n0, &n0p, Rule::Sigma3, true},
                     {&n1, &n1p, Rule::Sigma1, true},
                     {&n1p, &n0p, Rule::Sigma1, false}};
  bool edges_ok = g.edges.size() == std::size(edges);
  for (const E& e : edges) {
    bool found = std::any_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& ge) {
      return alpha_eq(g.nodes[ge.from], *e.from) && alpha_eq(g.nodes[ge.to], *e.to) && ge.step.rule == e.rule &&
             ge.head == e.head;
    });
    edges_ok = edges_ok && found;
  }
  if (!edges_ok) r.fail("edge set differs from the five expected steps");
  return r;
}

TermGen corpus(std::size_t size) { return TermGen::exhaustive(size, make_pool({"x", "y", "z"})); }

std::vector<Property> build_catalog() {
  TermGen big = corpus(7);
  TermGen small = corpus(5);
  TermGen tiny = TermGen::exhaustive(4, make_pool({"x", "y"}));
  auto fixture = [](std::string id, std::string statement, auto f) {
    Property pr{std::move(id), std::move(statement), TermGen{}, true, f};
    pr.corpus.max_size = 0;
    return pr;
  };
  return {
      {"commutation", "M -o sigma L -o betav N implies M -o betav L' -o sigma= N", big, false, prop_commutation},
      {"commutation-star", "M -o* M' implies M -o betav* L -o sigma* M'", big, false, prop_commutation_star},
      {"postponement", "M =>int L -o N implies M -o betav+ L' -o sigma* L'' =>int N (-o betav* for a sigma step)", big,
       false, prop_postponement},
      {"postponement-step", "M =>int L -o N implies M -o L' => N by a head step of the same kind", big, false,
       prop_postponement_step},
      {"key-lemma", "M => N implies M -o betav* L -o sigma* K =>int N", big, false, prop_key_lemma},
      {"value-lemmas", "values against head, internal and parallel reductions", big, false, prop_value_lemmas},
      {"inclusion-chains", "-> within => within ->*, and ->int within =>int within ->int*", big, false, prop_inclusions},
      {"parallel-reflexivity", "M => M, M =>int M and strongly", big, false, prop_reflexivity},
      {"sequentialization", "every ->v path of length <= 4 factors as -o betav* -o sigma* ->int*", small, false,
       prop_sequentialization},
      {"standardization", "every ->v path of length <= 4 has a standard sequence with the same endpoints", small, false,
       prop_standardization},
      {"confluence", "one-step forks of ->v, ->betav and ->sigma are joinable", big, false, prop_confluence},
      {"sigma-termination", "->sigma has no infinite sequence", big, false, prop_sigma_termination},
      {"value-preservation", "values reduce to values inside the body; sigma never produces a value", big, false,
       prop_value_preservation},
      {"head-determinism", "-o betav is deterministic", big, false, prop_head_determinism},
      {"diamond-failure", "the two parallel reducts of (\\x.a) ((\\y.b) (z z)) c have no common parallel reduct", {},
       true, prop_diamond_failure},
      fixture("sigma3-then-sigma1", "x ((\\y.z') (z I)) D: sigma3;sigma1 reaches N, sigma1*;sigma3* does not",
              [](const Term&, const RunOptions&) { return sigma_order(0); }),
      fixture("sigma1-then-sigma3", "x ((\\y.z') (z I) D): sigma1;sigma3 reaches N, sigma3*;sigma1* does not",
              [](const Term&, const RunOptions&) { return sigma_order(1); }),
      fixture("figure-graph", "head sigma and internal sigma1 graph of (\\y.y') (D (x I)) I", prop_figure_graph),
      {"adequacy", "M ->v M' implies M halts iff M' halts", big, false, prop_adequacy},
      {"cor-value", "->v* to a value goes through the head betav value; -o and -o betav reach the same value", big,
       false, prop_cor_value},
      {"head-normalization", "head v, head betav and strong head v normalization agree", big, false,
       prop_head_normalization},
      {"conservativity", "potential valuability and solvability agree with the betav oracles", big, false,
       prop_conservativity},
      {"strict-normalization", "normalizable terms reach their normal form by strict standard reduction", big, false,
       prop_strict_normalization},
      {"soundness-sample", "M ->v M' is never separated by a sampled context", tiny, false, prop_soundness_sample},
  };
}

}  // namespace

const std::vector<Property>& property_catalog() {
  static const std::vector<Property> catalog = [] {
    std::vector<Property> c = build_catalog();
    for (Property& pr : c)
      if (pr.fixture) pr.corpus.max_size = 0;
    return c;
  }();
  return catalog;
}

const Property* find_property(const std::string& id) {
  for (const Property& pr : property_catalog())
    if (pr.id == id) return &pr;
  return nullptr;
}

PropertyReport run_property(const Property& pr, const RunOptions& options, const std::optional<TermGen>& gen) {
  auto start = std::chrono::steady_clock::now();
  PropertyReport rep;
  rep.id = pr.id;

  auto guarded = [&](const Term& t) {
    try {
      return pr.check(t, options);
    } catch (const std::exception& e) {
      CheckResult r;
      r.fail("exception on " + print(t) + ": " + e.what());
      return r;
    }
  };

  if (pr.fixture) {
    CheckResult r = guarded(Term::var("x"));
    rep.corpus_size = 1;
    rep.checked = r.checked;
    rep.inconclusive = r.inconclusive;
    for (std::string& f : r.failures) rep.failures.push_back({0, std::move(f)});
  } else {
    const TermGen& g = gen ? *gen : pr.corpus;
    rep.max_size = g.max_size;
    for (Ident x : g.pool) rep.pool.push_back(x.name());
    if (g.mode == TermGen::Mode::Random) rep.seed = g.seed;
    std::vector<Term> terms = enumerate_terms(g);
    rep.corpus_size = terms.size();
    std::vector<CheckResult> results(terms.size());
    std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, terms.size()));
    auto work = [&](std::size_t w) {
      for (std::size_t i = w; i < terms.size(); i += jobs) results[i] = guarded(terms[i]);
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w);
      for (std::thread& t : pool) t.join();
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      rep.checked += results[i].checked;
      rep.inconclusive += results[i].inconclusive;
      for (std::string& f : results[i].failures) rep.failures.push_back({i, std::move(f)});
    }
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string report_json(const PropertyReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["property"] = r.id;
  j["status"] = r.passed() ? "pass" : "fail";
  j["max_size"] = r.max_size;
  j["pool"] = r.pool;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
  j["corpus_size"] = r.corpus_size;
  j["checked"] = r.checked;
  j["inconclusive"] = r.inconclusive;
  nlohmann::ordered_json fs = nlohmann::ordered_json::array();
  for (const Failure& f : r.failures) fs.push_back({{"index", f.index}, {"detail", f.detail}});
  j["failures"] = fs;
  if (timing) j["elapsed_ms"] = static_cast<long long>(r.elapsed_ms + 0.5);
  return j.dump();
}

std::string report_table(const std::vector<PropertyReport>& reports, bool timing) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-6s %8s %10s %8s %8s", "property", "status", "corpus", "checked", "unknown",
                "failures");
  out << line;
  if (timing) out << "   time(ms)";
  out << '\n';
  for (const PropertyReport& r : reports) {
    std::snprintf(line, sizeof line, "%-22s %-6s %8zu %10zu %8zu %8zu", r.id.c_str(), r.passed() ? "pass" : "FAIL",
                  r.corpus_size, r.checked, r.inconclusive, r.failures.size());
    out << line;
    if (timing) {
      std::snprintf(line, sizeof line, " %10.0f", r.elapsed_ms);
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

JoinResult joinable(const Term& a, const Term& b, const Relation& rel, std::size_t depth, std::size_t node_cap) {
  JoinResult out;
  out.complete = true;
  auto reach = [&](const Term& from) {
    TermSet seen;
    seen.insert(from);
    std::vector<Term> frontier{from};
    for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
      std::vector<Term> next;
      for (const Term& t : frontier)
        for (const Step& s : successors(t, rel)) {
          if (seen.size() >= node_cap) {
            out.complete = false;
            return seen;
          }
          if (seen.insert(s.result)) next.push_back(s.result);
        }
      frontier = std::move(next);
    }
    if (!frontier.empty()) out.complete = false;
    return seen;
  };
  TermSet ra = reach(a);
  TermSet rb = reach(b);
  for (const Term& t : ra)
    if (rb.contains(t)) {
      out.joined = true;
      break;
    }
  return out;
}

std::vector<SigmaOrderFixture> sigma_order_fixtures() {
  return {
      {parse("x ((\\y.z') (z I)) D"), parse("(\\y.x z') (z I) D"), parse("(\\y.x z' D) (z I)"), Rule::Sigma3,
       Rule::Sigma1},
      {parse("x ((\\y.z') (z I) D)"), parse("x ((\\y.z' D) (z I))"), parse("(\\y.x (z' D)) (z I)"), Rule::Sigma1,
       Rule::Sigma3},
  };
}

SigmaOrderCheck check_sigma_order(const SigmaOrderFixture& f) {
  SigmaOrderCheck out;
  for (const Step& s : successors(f.m, Relation::head_sigma({f.first})))
    if (alpha_eq(s.result, f.mid))
      for (const Step& t : successors(f.mid, Relation::head_sigma({f.second})))
        out.displayed_exists = out.displayed_exists || alpha_eq(t.result, f.n);

  auto closure = [](const Term& t, Rule r) {
    ReductionGraph g = reduction_graph(t, Relation::head_sigma({r}), 100000);
    if (g.truncated) throw GuardError("sigma closure exceeded the node cap");
    return g.nodes;
  };
  TermSet all;
  for (const Term& t : closure(f.m, f.second))
    for (const Term& u : closure(t, f.first)) all.insert(u);
  out.explored = all.size();
  out.reordered_exists = all.contains(f.n);
  return out;
}

}  // namespace shuffle
