#include "shuffle/analysis.hpp"

#include <algorithm>
#include <unordered_set>

#include "shuffle/enumerate.hpp"
#include "shuffle/errors.hpp"
#include "shuffle/reduction.hpp"

namespace shuffle {

namespace {

Analysis from_outcome(const Outcome& o) {
  Analysis a;
  a.fuel_spent = o.fuel_spent;
  switch (o.kind) {
    case Outcome::Kind::NormalForm:
      a.verdict = Verdict3::Yes;
      a.witness = "normal form " + print(o.term);
      a.value = o.term;
      a.trace = o.trace;
      break;
    case Outcome::Kind::CycleDetected:
      a.verdict = Verdict3::No;
      a.witness = "cycle at " + print(o.term);
      a.trace = o.trace;
      break;
    case Outcome::Kind::FuelExhausted:
      a.verdict = Verdict3::Unknown;
      a.witness = "fuel exhausted";
      break;
  }
  return a;
}

std::vector<Ident> sorted_free(const Term& m) {
  std::vector<Ident> xs(m.free_vars().begin(), m.free_vars().end());
  std::sort(xs.begin(), xs.end(), [](Ident a, Ident b) { return a.name() < b.name(); });
  return xs;
}

// Calls f on every tuple of `n` indices below `base`, first position slowest,
// until it returns true.
template <class F>
bool for_each_tuple(std::size_t n, std::size_t base, F&& f) {
  std::vector<std::size_t> idx(n, 0);
  if (n > 0 && base == 0) return false;
  for (;;) {
    if (f(idx)) return true;
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == base) idx[--i] = 0;
    if (i == 0) return false;
  }
}

}  // namespace

Analysis halts(const Term& m, std::size_t fuel) {
  Analysis a;
  Trace tr(m);
  std::unordered_set<std::string> seen{canonical_key(m)};
  for (;;) {
    const Term& cur = tr.last();
    if (is_value(cur)) {
      a.verdict = Verdict3::Yes;
      a.witness = "value " + print(cur);
      a.value = cur;
      break;
    }
    auto next = successors(cur, Relation::head_betav());
    if (next.empty()) {
      a.verdict = Verdict3::No;
      a.witness = "stuck at " + print(cur);
      break;
    }
    if (tr.length() == fuel) {
      a.witness = "fuel exhausted";
      break;
    }
    bool fresh = seen.insert(canonical_key(next[0].result)).second;
    tr.steps.push_back(std::move(next[0]));
    if (!fresh) {
      a.verdict = Verdict3::No;
      a.witness = "cycle at " + print(tr.last());
      break;
    }
  }
  a.fuel_spent = tr.length();
  a.trace = std::move(tr);
  return a;
}

Analysis head_v_eval(const Term& m, std::size_t fuel) {
  struct Node {
    std::size_t parent;
    std::optional<Step> step;
  };
  TermSet seen;
  seen.insert(m);
  std::vector<Node> nodes{{0, std::nullopt}};
  Analysis a;
  bool complete = true;
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (is_value(seen[i])) {
      hit = i;
      break;
    }
    if (a.fuel_spent == fuel) {
      complete = false;
      break;
    }
    ++a.fuel_spent;
    for (Step& s : successors(seen[i], Relation::head_v()))
      if (seen.insert(s.result)) nodes.push_back({i, std::move(s)});
  }
  if (!hit) {
    a.verdict = complete ? Verdict3::No : Verdict3::Unknown;
    a.witness = complete ? "no value among " + std::to_string(seen.size()) + " head v reducts" : "fuel exhausted";
    return a;
  }
  std::vector<Step> steps;
  for (std::size_t i = *hit; nodes[i].step; i = nodes[i].parent) steps.push_back(*nodes[i].step);
  Trace tr(m);
  tr.steps.assign(steps.rbegin(), steps.rend());
  Term v = seen[*hit];
  Analysis h = halts(m, std::max(fuel, tr.length()));
  if (h.verdict == Verdict3::No || (h.verdict == Verdict3::Yes && !alpha_eq(*h.value, v)))
    throw ConsistencyError("head v reaches " + print(v) + " but head betav gives " + h.witness + " from " + print(m));
  a.verdict = Verdict3::Yes;
  a.witness = "value " + print(v);
  a.value = v;
  a.trace = std::move(tr);
  return a;
}

Ident hole() {
  static const Ident h = Ident::of("[]");
  return h;
}

Term plug(const Term& ctx, const Term& t) {
  if (!contains(ctx.free_vars(), hole())) return ctx;
  switch (ctx.kind()) {
    case Term::Kind::Var: return t;
    case Term::Kind::Abs: return Term::abs(ctx.name(), plug(ctx.body(), t));
    case Term::Kind::App: return Term::app(plug(ctx.fun(), t), plug(ctx.arg(), t));
  }
  return ctx;
}

Analysis obs_equiv_sample(const Term& m, const Term& n, std::size_t contexts, std::size_t size, std::size_t fuel) {
  std::vector<Ident> pool = sorted_free(Term::app(m, n));
  pool.push_back(hole());
  Analysis a;
  std::size_t tried = 0;
  for (const Term& c : enumerate_terms(TermGen::exhaustive(size, pool))) {
    if (tried == contexts) break;
    if (!contains(c.free_vars(), hole())) continue;
    ++tried;
    Analysis hm = halts(plug(c, m), fuel);
    Analysis hn = halts(plug(c, n), fuel);
    a.fuel_spent += hm.fuel_spent + hn.fuel_spent;
    if (hm.verdict != Verdict3::Unknown && hn.verdict != Verdict3::Unknown && hm.verdict != hn.verdict) {
      a.verdict = Verdict3::No;
      a.witness = "context " + print(c);
      return a;
    }
  }
  a.witness = "no distinguishing context among " + std::to_string(tried);
  return a;
}

Analysis potentially_valuable(const Term& m, std::size_t fuel) {
  return from_outcome(normalize(m, Relation::weak(), Strategy::Leftmost, fuel));
}

Analysis solvable(const Term& m, std::size_t fuel) {
  return from_outcome(normalize(m, Relation::stratified(), Strategy::Leftmost, fuel));
}

Analysis betav_pv_oracle(const Term& m, std::size_t val_size, std::size_t fuel) {
  std::vector<Ident> xs = sorted_free(m);
  if (xs.empty()) {
    Analysis h = halts(m, fuel);
    h.witness = "no substitution; " + h.witness;
    return h;
  }
  std::vector<Term> vals = closed_values(val_size);
  Analysis a;
  bool found = for_each_tuple(xs.size(), vals.size(), [&](const std::vector<std::size_t>& idx) {
    Term t = m;
    for (std::size_t i = 0; i < xs.size(); ++i) t = substitute(t, xs[i], vals[idx[i]]);
    Analysis h = halts(t, fuel);
    a.fuel_spent += h.fuel_spent;
    if (h.verdict != Verdict3::Yes) return false;
    a.verdict = Verdict3::Yes;
    for (std::size_t i = 0; i < xs.size(); ++i)
      a.witness += (i ? ", " : "") + xs[i].name() + " := " + print(vals[idx[i]]);
    a.value = h.value;
    a.trace = h.trace;
    return true;
  });
  if (!found) a.witness = "no closed values of size <= " + std::to_string(val_size);
  return a;
}

namespace {

// M ->betav* I, decided by head betav evaluation: first to a value \x.B,
// then B to the variable x.
Verdict3 reduces_to_identity(const Term& t, std::size_t fuel, std::size_t& spent) {
  Analysis h = halts(t, fuel);
  spent += h.fuel_spent;
  if (h.verdict != Verdict3::Yes) return h.verdict;
  const Term& v = *h.value;
  if (!v.is_abs()) return Verdict3::No;
  Analysis b = halts(v.body(), fuel);
  spent += b.fuel_spent;
  if (b.verdict != Verdict3::Yes) return b.verdict;
  return b.value->is_var() && b.value->name() == v.name() ? Verdict3::Yes : Verdict3::No;
}

}  // namespace

Analysis betav_solv_oracle(const Term& m, std::size_t arg_count, std::size_t arg_size, std::size_t fuel) {
  std::vector<Ident> xs = sorted_free(m);
  Term wrapped = m;
  for (std::size_t i = xs.size(); i-- > 0;) wrapped = Term::abs(xs[i], wrapped);
  std::vector<Term> args = closed_terms(arg_size);
  Analysis a;
  for (std::size_t n = 0; n <= arg_count; ++n) {
    bool found = for_each_tuple(n, args.size(), [&](const std::vector<std::size_t>& idx) {
      Term t = wrapped;
      for (std::size_t i : idx) t = Term::app(t, args[i]);
      if (reduces_to_identity(t, fuel, a.fuel_spent) != Verdict3::Yes) return false;
      a.verdict = Verdict3::Yes;
      a.witness = "arguments:";
      for (std::size_t i : idx) a.witness += " (" + print(args[i]) + ")";
      if (idx.empty()) a.witness += " none";
      return true;
    });
    if (found) return a;
  }
  if (xs.empty()) {
    Analysis h = halts(m, fuel);
    a.fuel_spent += h.fuel_spent;
    if (h.verdict == Verdict3::No) {
      a.verdict = Verdict3::No;
      a.witness = "closed and diverging; " + h.witness;
      return a;
    }
  }
  a.witness = "no arguments found up to " + std::to_string(arg_count) + " of size <= " + std::to_string(arg_size);
  return a;
}

}  // namespace shuffle
