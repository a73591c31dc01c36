#include "shuffle/parallel.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "shuffle/reduction.hpp"

namespace shuffle {

std::string_view par_rule_name(ParRule r) {
  switch (r) {
    case ParRule::BetaV:
      return "betav";
    case ParRule::Sigma1:
      return "sigma1";
    case ParRule::Sigma3:
      return "sigma3";
    case ParRule::Lambda:
      return "lambda";
    case ParRule::Var:
      return "var";
    case ParRule::RightInt:
      return "right-int";
    case ParRule::LambdaInt:
      return "lambda-int";
    case ParRule::VarInt:
      return "var-int";
  }
  return "?";
}

namespace {

void format_into(const ParDerivation& d, const PrintOptions& options, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += par_rule_name(d.rule);
  out += ": " + print(d.source, options) + (d.internal() ? " =>int " : " => ") + print(d.target, options) + "\n";
  for (const ParDerivation& p : d.premises) format_into(p, options, depth + 1, out);
}

// Splits off the last j arguments: t = core b_1 ... b_j.
std::optional<std::pair<Term, std::vector<Term>>> peel(const Term& t, std::size_t j) {
  std::vector<Term> args;
  const Term* cur = &t;
  for (std::size_t i = 0; i < j; ++i) {
    if (!cur->is_app()) return std::nullopt;
    args.push_back(cur->arg());
    cur = &cur->fun();
  }
  std::reverse(args.begin(), args.end());
  return std::make_pair(*cur, std::move(args));
}

// Renames the binder of `abs` to `x`; absent when `x` is free in it.
std::optional<Term> with_binder(const Term& abs, Ident x) {
  if (abs.name() == x) return abs;
  if (contains(abs.free_vars(), x)) return std::nullopt;
  return rename_binder(abs, x);
}

// Cartesian product of candidate lists; stops after `cap` tuples.
bool for_each_tuple(const std::vector<const std::vector<Term>*>& options, std::size_t cap,
                    const std::function<void(const std::vector<Term>&)>& fn) {
  for (const auto* o : options)
    if (o->empty()) return true;
  std::vector<std::size_t> index(options.size(), 0);
  std::vector<Term> tuple;
  tuple.reserve(options.size());
  for (std::size_t count = 0;; ++count) {
    if (count >= cap) return false;
    tuple.clear();
    for (std::size_t i = 0; i < options.size(); ++i) tuple.push_back((*options[i])[index[i]]);
    fn(tuple);
    std::size_t i = options.size();
    while (i > 0) {
      --i;
      if (++index[i] < options[i]->size()) break;
      index[i] = 0;
      if (i == 0) return true;
    }
    if (options.empty()) return true;
  }
}

struct Entry {
  std::vector<Term> terms;
  bool truncated = false;
};

class ParEnumerator {
 public:
  explicit ParEnumerator(std::size_t cap) : cap_(cap) {}

  std::shared_ptr<const Entry> all(const Term& m) { return memoized(memo_, m, false); }
  std::shared_ptr<const Entry> internal(const Term& m) { return memoized(memo_int_, m, true); }

  void trim() {
    if (memo_.size() + memo_int_.size() > 200000) {
      memo_.clear();
      memo_int_.clear();
    }
  }

 private:
  using Memo = std::unordered_map<std::string, std::shared_ptr<const Entry>>;

  std::shared_ptr<const Entry> memoized(Memo& memo, const Term& m, bool internal_only) {
    std::string key = canonical_key(m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto entry = std::make_shared<Entry>(internal_only ? compute_internal(m) : compute_all(m));
    memo.emplace(std::move(key), entry);
    return entry;
  }

  struct Builder {
    TermSet set;
    bool truncated = false;
    std::size_t cap;
    void add(const Term& t) {
      if (set.size() >= cap) {
        truncated = true;
        return;
      }
      set.insert(t);
    }
    Entry done() { return Entry{std::vector<Term>(set.begin(), set.end()), truncated}; }
  };

  // Collects the candidate lists and records truncation of any of them.
  const std::vector<Term>* options_of(const Term& t, std::vector<std::shared_ptr<const Entry>>& keep,
                                      Builder& b, bool internal_only = false) {
    auto e = internal_only ? internal(t) : all(t);
    b.truncated |= e->truncated;
    keep.push_back(e);
    return &e->terms;
  }

  void product(Builder& b, const std::vector<const std::vector<Term>*>& options,
               const std::function<Term(const std::vector<Term>&)>& make) {
    if (!for_each_tuple(options, cap_, [&](const std::vector<Term>& tuple) { b.add(make(tuple)); }))
      b.truncated = true;
  }

  Entry compute_all(const Term& m) {
    Builder b{TermSet{}, false, cap_};
    Spine sp = decompose_applicative(m);
    const Term& h = sp.head;
    const std::vector<Term>& a = sp.args;
    std::size_t k = a.size();
    std::vector<std::shared_ptr<const Entry>> keep;

    auto rest_from = [&](std::size_t i, std::vector<const std::vector<Term>*>& opts) {
      for (std::size_t j = i; j < k; ++j) opts.push_back(options_of(a[j], keep, b));
    };
    auto tail = [](const std::vector<Term>& tuple, std::size_t from) {
      return std::vector<Term>(tuple.begin() + static_cast<long>(from), tuple.end());
    };

    if (h.is_var()) {
      std::vector<const std::vector<Term>*> opts;
      rest_from(0, opts);
      product(b, opts, [&](const std::vector<Term>& t) { return apply_spine(h, t); });
      sigma3(b, h, a, keep);
      return b.done();
    }
    // betav
    if (k >= 1 && is_value(a[0])) {
      std::vector<const std::vector<Term>*> opts{options_of(h.body(), keep, b), options_of(a[0], keep, b)};
      rest_from(1, opts);
      product(b, opts, [&](const std::vector<Term>& t) {
        return apply_spine(substitute(t[0], h.name(), t[1]), tail(t, 2));
      });
    }
    // sigma1
    if (k >= 2) {
      Term hx = apart_from(h, a[1]);
      std::vector<const std::vector<Term>*> opts{options_of(hx.body(), keep, b), options_of(a[1], keep, b),
                                                 options_of(a[0], keep, b)};
      rest_from(2, opts);
      product(b, opts, [&](const std::vector<Term>& t) {
        return apply_spine(Term::app(Term::abs(hx.name(), Term::app(t[0], t[1])), t[2]), tail(t, 3));
      });
    }
    sigma3(b, h, a, keep);
    // lambda
    {
      std::vector<const std::vector<Term>*> opts{options_of(h.body(), keep, b)};
      rest_from(0, opts);
      product(b, opts, [&](const std::vector<Term>& t) { return apply_spine(Term::abs(h.name(), t[0]), tail(t, 1)); });
    }
    return b.done();
  }

  void sigma3(Builder& b, const Term& h, const std::vector<Term>& a, std::vector<std::shared_ptr<const Entry>>& keep) {
    if (a.empty() || !a[0].is_app() || !a[0].fun().is_abs()) return;
    Term lx = apart_from(a[0].fun(), h);
    std::vector<const std::vector<Term>*> opts{options_of(h, keep, b), options_of(lx.body(), keep, b),
                                               options_of(a[0].arg(), keep, b)};
    for (std::size_t j = 1; j < a.size(); ++j) opts.push_back(options_of(a[j], keep, b));
    product(b, opts, [&](const std::vector<Term>& t) {
      return apply_spine(Term::app(Term::abs(lx.name(), Term::app(t[0], t[1])), t[2]),
                         std::vector<Term>(t.begin() + 3, t.end()));
    });
  }

  Entry compute_internal(const Term& m) {
    Builder b{TermSet{}, false, cap_};
    std::vector<std::shared_ptr<const Entry>> keep;
    if (m.is_var()) {
      b.add(m);
    } else if (m.is_abs()) {
      for (const Term& body : *options_of(m.body(), keep, b)) b.add(Term::abs(m.name(), body));
    } else {
      Spine sp = decompose_applicative(m);
      std::vector<const std::vector<Term>*> opts{options_of(sp.head, keep, b), options_of(sp.args[0], keep, b, true)};
      for (std::size_t j = 1; j < sp.args.size(); ++j) opts.push_back(options_of(sp.args[j], keep, b));
      product(b, opts, [&](const std::vector<Term>& t) {
        return apply_spine(t[0], std::vector<Term>(t.begin() + 1, t.end()));
      });
    }
    return b.done();
  }

  std::size_t cap_;
  Memo memo_;
  Memo memo_int_;
};

ParEnumerator& shared_enumerator() {
  thread_local ParEnumerator e(100000);
  e.trim();
  return e;
}

std::optional<std::vector<ParDerivation>> all_par(const std::vector<Term>& as, const std::vector<Term>& bs) {
  if (as.size() != bs.size()) return std::nullopt;
  std::vector<ParDerivation> out;
  out.reserve(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) {
    auto d = par_check(as[i], bs[i]);
    if (!d) return std::nullopt;
    out.push_back(std::move(*d));
  }
  return out;
}

ParDerivation node(ParRule r, std::vector<ParDerivation> premises, const Term& m, const Term& n) {
  return ParDerivation{r, std::move(premises), m, n};
}

void append(std::vector<ParDerivation>& to, std::vector<ParDerivation>&& more) {
  for (ParDerivation& d : more) to.push_back(std::move(d));
}

std::optional<ParDerivation> try_betav(const Term& m, const Term& n, const Spine& sp) {
  const Term& h = sp.head;
  const std::vector<Term>& a = sp.args;
  if (!h.is_abs() || a.empty() || !is_value(a[0])) return std::nullopt;
  auto split = peel(n, a.size() - 1);
  if (!split) return std::nullopt;
  auto rest = all_par(std::vector<Term>(a.begin() + 1, a.end()), split->second);
  if (!rest) return std::nullopt;
  const Term& core = split->first;
  ParEnumerator& e = shared_enumerator();
  auto bodies = e.all(h.body());
  auto values = e.all(a[0]);
  for (const Term& v : values->terms) {
    for (const Term& body : bodies->terms) {
      if (!alpha_eq(substitute(body, h.name(), v), core)) continue;
      std::vector<ParDerivation> premises;
      premises.push_back(*par_check(a[0], v));
      premises.push_back(*par_check(h.body(), body));
      append(premises, std::move(*rest));
      return node(ParRule::BetaV, std::move(premises), m, n);
    }
  }
  return std::nullopt;
}

std::optional<ParDerivation> try_sigma1(const Term& m, const Term& n, const Spine& sp) {
  const Term& h = sp.head;
  const std::vector<Term>& a = sp.args;
  if (!h.is_abs() || a.size() < 2) return std::nullopt;
  auto split = peel(n, a.size() - 2);
  if (!split) return std::nullopt;
  const Term& core = split->first;  // (\x.M0' L') N'
  if (!core.is_app() || !core.fun().is_abs()) return std::nullopt;
  Term hx = apart_from(h, a[1]);
  auto abs = with_binder(core.fun(), hx.name());
  if (!abs || !abs->body().is_app()) return std::nullopt;
  auto dn = par_check(a[0], core.arg());
  if (!dn) return std::nullopt;
  auto dl = par_check(a[1], abs->body().arg());
  if (!dl) return std::nullopt;
  auto dm = par_check(hx.body(), abs->body().fun());
  if (!dm) return std::nullopt;
  auto rest = all_par(std::vector<Term>(a.begin() + 2, a.end()), split->second);
  if (!rest) return std::nullopt;
  std::vector<ParDerivation> premises{std::move(*dn), std::move(*dl), std::move(*dm)};
  append(premises, std::move(*rest));
  return node(ParRule::Sigma1, std::move(premises), m, n);
}

std::optional<ParDerivation> try_sigma3(const Term& m, const Term& n, const Spine& sp) {
  const Term& v = sp.head;
  const std::vector<Term>& a = sp.args;
  if (a.empty() || !a[0].is_app() || !a[0].fun().is_abs()) return std::nullopt;
  auto split = peel(n, a.size() - 1);
  if (!split) return std::nullopt;
  const Term& core = split->first;  // (\x.V' L') N'
  if (!core.is_app() || !core.fun().is_abs()) return std::nullopt;
  Term lx = apart_from(a[0].fun(), v);
  auto abs = with_binder(core.fun(), lx.name());
  if (!abs || !abs->body().is_app()) return std::nullopt;
  auto dv = par_check(v, abs->body().fun());
  if (!dv) return std::nullopt;
  auto dn = par_check(a[0].arg(), core.arg());
  if (!dn) return std::nullopt;
  auto dl = par_check(lx.body(), abs->body().arg());
  if (!dl) return std::nullopt;
  auto rest = all_par(std::vector<Term>(a.begin() + 1, a.end()), split->second);
  if (!rest) return std::nullopt;
  std::vector<ParDerivation> premises{std::move(*dv), std::move(*dn), std::move(*dl)};
  append(premises, std::move(*rest));
  return node(ParRule::Sigma3, std::move(premises), m, n);
}

std::optional<ParDerivation> try_lambda(const Term& m, const Term& n, const Spine& sp) {
  const Term& h = sp.head;
  if (!h.is_abs()) return std::nullopt;
  auto split = peel(n, sp.args.size());
  if (!split || !split->first.is_abs()) return std::nullopt;
  auto abs = with_binder(split->first, h.name());
  if (!abs) return std::nullopt;
  auto d0 = par_check(h.body(), abs->body());
  if (!d0) return std::nullopt;
  auto rest = all_par(sp.args, split->second);
  if (!rest) return std::nullopt;
  std::vector<ParDerivation> premises{std::move(*d0)};
  append(premises, std::move(*rest));
  return node(ParRule::Lambda, std::move(premises), m, n);
}

std::optional<ParDerivation> try_var(const Term& m, const Term& n, const Spine& sp) {
  if (!sp.head.is_var()) return std::nullopt;
  auto split = peel(n, sp.args.size());
  if (!split || !split->first.is_var() || split->first.name() != sp.head.name()) return std::nullopt;
  auto rest = all_par(sp.args, split->second);
  if (!rest) return std::nullopt;
  return node(ParRule::Var, std::move(*rest), m, n);
}

}  // namespace

std::string format_derivation(const ParDerivation& d, const PrintOptions& options) {
  std::string out;
  format_into(d, options, 0, out);
  return out;
}

std::optional<ParDerivation> par_check(const Term& m, const Term& n) {
  // Reductions never create free variables.
  for (Ident x : n.free_vars())
    if (!contains(m.free_vars(), x)) return std::nullopt;
  Spine sp = decompose_applicative(m);
  if (auto d = try_betav(m, n, sp)) return d;
  if (auto d = try_sigma1(m, n, sp)) return d;
  if (auto d = try_sigma3(m, n, sp)) return d;
  if (auto d = try_lambda(m, n, sp)) return d;
  return try_var(m, n, sp);
}

std::optional<ParDerivation> par_int_check(const Term& m, const Term& n) {
  if (m.is_var()) {
    if (n.is_var() && n.name() == m.name()) return node(ParRule::VarInt, {}, m, n);
    return std::nullopt;
  }
  if (m.is_abs()) {
    if (!n.is_abs()) return std::nullopt;
    auto abs = with_binder(n, m.name());
    if (!abs) return std::nullopt;
    auto d = par_check(m.body(), abs->body());
    if (!d) return std::nullopt;
    std::vector<ParDerivation> premises;
    premises.push_back(std::move(*d));
    return node(ParRule::LambdaInt, std::move(premises), m, n);
  }
  Spine sp = decompose_applicative(m);
  auto split = peel(n, sp.args.size() - 1);
  if (!split || !split->first.is_app()) return std::nullopt;
  const Term& core = split->first;  // V' N'
  auto dv = par_check(sp.head, core.fun());
  if (!dv) return std::nullopt;
  auto dn = par_int_check(sp.args[0], core.arg());
  if (!dn) return std::nullopt;
  auto rest = all_par(std::vector<Term>(sp.args.begin() + 1, sp.args.end()), split->second);
  if (!rest) return std::nullopt;
  std::vector<ParDerivation> premises{std::move(*dv), std::move(*dn)};
  append(premises, std::move(*rest));
  return node(ParRule::RightInt, std::move(premises), m, n);
}

namespace {

bool premises_match(const std::vector<ParDerivation>& ps, std::size_t from, const std::vector<Term>& sources,
                    const std::vector<Term>& targets) {
  if (ps.size() < from + sources.size() || sources.size() != targets.size()) return false;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const ParDerivation& p = ps[from + i];
    if (p.internal() || !alpha_eq(p.source, sources[i]) || !alpha_eq(p.target, targets[i])) return false;
  }
  return true;
}

bool node_valid(const ParDerivation& d) {
  const auto& ps = d.premises;
  Spine sp = decompose_applicative(d.source);
  const Term& h = sp.head;
  const auto& a = sp.args;
  auto targets_of = [&](std::size_t from) {
    std::vector<Term> out;
    for (std::size_t i = from; i < ps.size(); ++i) out.push_back(ps[i].target);
    return out;
  };
  auto tail = [&](std::size_t from) { return std::vector<Term>(a.begin() + static_cast<long>(from), a.end()); };
  switch (d.rule) {
    case ParRule::Var:
      return h.is_var() && premises_match(ps, 0, a, targets_of(0)) &&
             alpha_eq(d.target, apply_spine(h, targets_of(0)));
    case ParRule::Lambda: {
      if (!h.is_abs() || ps.empty() || ps[0].internal() || !alpha_eq(ps[0].source, h.body())) return false;
      Term built = apply_spine(Term::abs(h.name(), ps[0].target), targets_of(1));
      return premises_match(ps, 1, a, targets_of(1)) && alpha_eq(d.target, built);
    }
    case ParRule::BetaV: {
      if (!h.is_abs() || a.empty() || !is_value(a[0]) || ps.size() < 2) return false;
      if (ps[0].internal() || ps[1].internal() || !alpha_eq(ps[0].source, a[0]) || !alpha_eq(ps[1].source, h.body()))
        return false;
      Term built = apply_spine(substitute(ps[1].target, h.name(), ps[0].target), targets_of(2));
      return premises_match(ps, 2, tail(1), targets_of(2)) && alpha_eq(d.target, built);
    }
    case ParRule::Sigma1: {
      if (!h.is_abs() || a.size() < 2 || ps.size() < 3) return false;
      Term hx = apart_from(h, a[1]);
      if (!premises_match(ps, 0, {a[0], a[1], hx.body()}, {ps[0].target, ps[1].target, ps[2].target})) return false;
      Term built = apply_spine(
          Term::app(Term::abs(hx.name(), Term::app(ps[2].target, ps[1].target)), ps[0].target), targets_of(3));
      return premises_match(ps, 3, tail(2), targets_of(3)) && alpha_eq(d.target, built);
    }
    case ParRule::Sigma3: {
      if (a.empty() || !a[0].is_app() || !a[0].fun().is_abs() || ps.size() < 3) return false;
      Term lx = apart_from(a[0].fun(), h);
      if (!premises_match(ps, 0, {h, a[0].arg(), lx.body()}, {ps[0].target, ps[1].target, ps[2].target}))
        return false;
      Term built = apply_spine(
          Term::app(Term::abs(lx.name(), Term::app(ps[0].target, ps[2].target)), ps[1].target), targets_of(3));
      return premises_match(ps, 3, tail(1), targets_of(3)) && alpha_eq(d.target, built);
    }
    case ParRule::VarInt:
      return d.source.is_var() && ps.empty() && alpha_eq(d.source, d.target);
    case ParRule::LambdaInt:
      return d.source.is_abs() && ps.size() == 1 && !ps[0].internal() && alpha_eq(ps[0].source, d.source.body()) &&
             alpha_eq(d.target, Term::abs(d.source.name(), ps[0].target));
    case ParRule::RightInt: {
      if (a.empty() || ps.size() < 2 || ps[0].internal() || !ps[1].internal()) return false;
      if (!alpha_eq(ps[0].source, h) || !alpha_eq(ps[1].source, a[0])) return false;
      Term built = apply_spine(Term::app(ps[0].target, ps[1].target), targets_of(2));
      return premises_match(ps, 2, tail(1), targets_of(2)) && alpha_eq(d.target, built);
    }
  }
  return false;
}

}  // namespace

bool derivation_valid(const ParDerivation& d) {
  if (!node_valid(d)) return false;
  return std::all_of(d.premises.begin(), d.premises.end(), derivation_valid);
}

ParReducts par_reducts(const Term& m, std::size_t cap) {
  ParEnumerator e(cap);
  auto entry = e.all(m);
  ParReducts out;
  for (const Term& t : entry->terms) out.terms.insert(t);
  out.truncated = entry->truncated;
  return out;
}

ParReducts par_int_reducts(const Term& m, std::size_t cap) {
  ParEnumerator e(cap);
  auto entry = e.internal(m);
  ParReducts out;
  for (const Term& t : entry->terms) out.terms.insert(t);
  out.truncated = entry->truncated;
  return out;
}

StrongPar strong_par_check(const Term& m, const Term& n, std::size_t fuel) {
  StrongPar out;
  if (!par_check(m, n)) {
    out.verdict = Verdict3::No;
    return out;
  }
  Trace betav(m);
  std::unordered_set<std::string> seen{canonical_key(m)};
  for (;;) {
    const Term& l = betav.last();
    // Head sigma reducts of l, breadth-first with parents for the witness.
    TermSet closure;
    closure.insert(l);
    std::vector<std::pair<std::size_t, Step>> parent;
    for (std::size_t i = 0; i < closure.size(); ++i) {
      Term k = closure[i];
      if (auto d = par_int_check(k, n)) {
        std::vector<Step> steps;
        for (std::size_t v = i; v != 0; v = parent[v - 1].first) steps.push_back(parent[v - 1].second);
        Trace sigma(l);
        sigma.steps.assign(steps.rbegin(), steps.rend());
        out.verdict = Verdict3::Yes;
        out.head_betav = betav;
        out.head_sigma = std::move(sigma);
        out.internal = std::move(*d);
        return out;
      }
      for (Step& s : successors(k, Relation::head_sigma()))
        if (closure.insert(s.result)) parent.emplace_back(i, std::move(s));
    }
    auto next = successors(l, Relation::head_betav());
    if (next.empty()) {
      out.verdict = Verdict3::No;
      return out;
    }
    if (out.fuel_spent == fuel) return out;
    ++out.fuel_spent;
    if (!seen.insert(canonical_key(next[0].result)).second) {
      out.verdict = Verdict3::No;
      return out;
    }
    betav.steps.push_back(std::move(next[0]));
  }
}

}  // namespace shuffle
