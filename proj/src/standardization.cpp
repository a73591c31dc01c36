#include "shuffle/standardization.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <unordered_map>
#include <unordered_set>

#include "shuffle/errors.hpp"

namespace shuffle {

namespace {

using Seq = std::span<const Term>;

bool head_v_normal(const Term& t) { return head_redexes(t).empty(); }
bool head_betav_normal(const Term& t) { return !step_head_betav(t).has_value(); }

std::string pair_kind(const Term& a, const Term& b) {
  if (is_head_betav_pair(a, b)) return "head betav";
  if (is_head_sigma_pair(a, b)) return "head sigma";
  return "internal";
}

// Decides the mutual induction on sequences of terms, memoized on the
// alpha-classes of the sequence.
class Checker {
 public:
  explicit Checker(bool strict) : strict_(strict) {}

  /// Least k making `s` a (strict) standard head sequence.
  std::optional<std::size_t> head(Seq s) {
    const std::size_t m = s.size() - 1;
    std::size_t betav = 0;
    while (betav < m && is_head_betav_pair(s[betav], s[betav + 1])) ++betav;
    std::size_t sigma_from = m;
    while (sigma_from > 0 && is_head_sigma_pair(s[sigma_from - 1], s[sigma_from])) --sigma_from;
    if (sigma_from > betav) return std::nullopt;
    if (!strict_) return sigma_from;
    if (!head_v_normal(s[m])) return std::nullopt;
    for (std::size_t k = sigma_from; k <= betav; ++k)
      if (head_betav_normal(s[k])) return k;
    return std::nullopt;
  }

  bool standard(Seq s) { return memo('s', s, [&] { return standard_raw(s); }); }
  bool inner(Seq s) { return memo('i', s, [&] { return inner_raw(s); }); }

 private:
  bool strict_;
  std::unordered_map<std::string, bool> memo_;

  bool memo(char tag, Seq s, const std::function<bool()>& f) {
    std::string key(1, tag);
    for (const Term& t : s) key += canonical_key(t) + '|';
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = f();
    memo_[key] = r;
    return r;
  }

  bool standard_raw(Seq s) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j > 0 && !is_head_pair(s[j - 1], s[j])) break;
      if (head(s.first(j + 1)) && inner(s.subspan(j))) return true;
    }
    return false;
  }

  bool inner_raw(Seq s) {
    if (s.size() == 1) return true;
    const Term& t0 = s[0];
    if (t0.is_var()) return false;
    if (t0.is_abs()) {
      Ident z = t0.name();
      std::vector<Term> bodies;
      for (const Term& t : s) {
        if (!t.is_abs()) return false;
        bodies.push_back(t.name() == z ? t.body() : rename_binder(t, z).body());
      }
      return standard(bodies);
    }
    std::vector<Term> fs, as;
    for (const Term& t : s) {
      if (!t.is_app()) return false;
      fs.push_back(t.fun());
      as.push_back(t.arg());
    }
    const bool value_fun = is_value(fs[0]);
    const std::size_t m = s.size() - 1;
    // fs[j..m] constant and as[0..j] constant.
    std::size_t lo = m;
    while (lo > 0 && alpha_eq(fs[lo - 1], fs[m])) --lo;
    for (std::size_t j = lo; j <= m; ++j) {
      if (j > 0 && !alpha_eq(as[j - 1], as[0])) break;
      Seq f = std::span<const Term>(fs).first(j + 1);
      Seq a = std::span<const Term>(as).subspan(j);
      if (value_fun) {
        if (std::all_of(f.begin(), f.end(), [](const Term& t) { return is_value(t); }) && standard(f) && inner(a))
          return true;
      } else if (inner(f) && standard(a)) {
        return true;
      }
    }
    return false;
  }
};

enum class Goal : std::uint8_t { Head, Standard, Inner };

StdVerdict run_check(const Trace& tr, Goal goal, bool strict) {
  validate_trace(tr);
  std::vector<Term> terms = tr.terms();
  Checker c(strict);
  auto accepts = [&](Seq s) -> bool {
    switch (goal) {
      case Goal::Head: return c.head(s).has_value();
      case Goal::Standard: return c.standard(s);
      case Goal::Inner: return c.inner(s);
    }
    return false;
  };
  Seq all(terms);
  StdVerdict v;
  if (accepts(all)) {
    switch (goal) {
      case Goal::Head:
        v.kind = strict ? StdVerdict::Kind::StrictStandardHead : StdVerdict::Kind::StandardHead;
        v.split = *c.head(all);
        break;
      case Goal::Standard:
        v.kind = strict ? StdVerdict::Kind::StrictStandard : StdVerdict::Kind::Standard;
        break;
      case Goal::Inner: v.kind = StdVerdict::Kind::StandardInner; break;
    }
    return v;
  }
  // Strictness is not closed under prefixes; report the first non-standard
  // prefix of the plain relation, else the end of the trace.
  Checker plain(false);
  std::size_t i = 1;
  for (; i < terms.size(); ++i) {
    Seq p = all.first(i + 1);
    bool ok = goal == Goal::Head ? plain.head(p).has_value() : goal == Goal::Inner ? plain.inner(p) : plain.standard(p);
    if (!ok) break;
  }
  v.kind = StdVerdict::Kind::NotStandard;
  if (terms.size() == 1) {
    v.step = 0;
    v.reason = "the single term is not head normal";
  } else if (i < terms.size()) {
    v.step = i;
    v.reason = pair_kind(terms[i - 1], terms[i]) + " step out of order";
  } else {
    v.step = terms.size() - 1;
    v.reason = "head phase does not reach head normal form";
  }
  return v;
}

}  // namespace

std::string format_verdict(const StdVerdict& v) {
  switch (v.kind) {
    case StdVerdict::Kind::StandardHead: return "STANDARD-HEAD k=" + std::to_string(v.split);
    case StdVerdict::Kind::Standard: return "STANDARD";
    case StdVerdict::Kind::StandardInner: return "STANDARD-INNER";
    case StdVerdict::Kind::StrictStandardHead: return "STRICT-STANDARD-HEAD k=" + std::to_string(v.split);
    case StdVerdict::Kind::StrictStandard: return "STRICT-STANDARD";
    case StdVerdict::Kind::NotStandard: return "NOT-STANDARD @ step " + std::to_string(v.step) + ": " + v.reason;
  }
  return "";
}

StdVerdict check_standard_head(const Trace& tr) { return run_check(tr, Goal::Head, false); }
StdVerdict check_strict_standard_head(const Trace& tr) { return run_check(tr, Goal::Head, true); }
StdVerdict check_standard(const Trace& tr) { return run_check(tr, Goal::Standard, false); }
StdVerdict check_standard_inner(const Trace& tr) { return run_check(tr, Goal::Inner, false); }
StdVerdict check_strict_standard(const Trace& tr) { return run_check(tr, Goal::Standard, true); }

Trace Factorization::joined() const {
  Trace out = head_betav;
  out.append(head_sigma);
  out.append(internal);
  return out;
}

Trace lift_trace(const Trace& sub, const Term& whole, const Path& at) {
  Trace out(whole);
  Term cur = whole;
  for (const Step& s : sub.steps) {
    cur = replace_at(cur, at, s.result);
    out.steps.push_back(Step{s.rule, at + s.path, cur});
  }
  return out;
}

namespace {

struct Node {
  Term term;
  std::size_t parent;
  std::optional<Step> step;
  std::size_t depth;
};

Trace trace_to(const std::vector<Node>& nodes, std::size_t i) {
  std::vector<Step> steps;
  while (nodes[i].step) {
    steps.push_back(*nodes[i].step);
    i = nodes[i].parent;
  }
  Trace tr(nodes[i].term);
  tr.steps.assign(steps.rbegin(), steps.rend());
  return tr;
}

// Head sigma reducts of `l`, breadth-first, with the traces reaching them.
std::vector<Node> sigma_tree(const Term& l) {
  std::vector<Node> nodes{{l, 0, std::nullopt, 0}};
  TermSet seen;
  seen.insert(l);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (Step& s : successors(nodes[i].term, Relation::head_sigma()))
      if (seen.insert(s.result)) nodes.push_back({s.result, i, std::move(s), nodes[i].depth + 1});
  return nodes;
}

}  // namespace

SeqSearch sequentialize(const Term& m, const Term& m2, std::size_t len_bound, std::size_t fuel) {
  constexpr std::size_t kNodeCap = 200000;
  SeqSearch out;
  Trace betav(m);
  std::unordered_set<std::string> seen{canonical_key(m)};
  const Relation internal = Relation::internal_v();
  for (;;) {
    std::vector<Node> sig = sigma_tree(betav.last());
    // Multi-source breadth-first internal search; the first hit has the
    // shortest internal part and the earliest sigma reduct.
    std::vector<Node> nodes;
    std::vector<std::size_t> origin;
    TermSet visited;
    for (std::size_t i = 0; i < sig.size(); ++i)
      if (visited.insert(sig[i].term)) {
        nodes.push_back({sig[i].term, 0, std::nullopt, 0});
        origin.push_back(i);
      }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (alpha_eq(nodes[i].term, m2)) {
        std::size_t root = i;
        while (nodes[root].step) root = nodes[root].parent;
        out.result = Factorization{betav, trace_to(sig, origin[root]), trace_to(nodes, i)};
        out.nodes += nodes.size();
        return out;
      }
      if (nodes[i].depth == len_bound || nodes.size() >= kNodeCap) continue;
      for (Step& s : successors(nodes[i].term, internal))
        if (visited.insert(s.result)) {
          nodes.push_back({s.result, i, std::move(s), nodes[i].depth + 1});
          origin.push_back(origin[i]);
        }
    }
    out.nodes += nodes.size();
    auto next = successors(betav.last(), Relation::head_betav());
    if (next.empty() || betav.length() == fuel) return out;
    if (!seen.insert(canonical_key(next[0].result)).second) return out;
    betav.steps.push_back(std::move(next[0]));
  }
}

namespace {

class Standardizer {
 public:
  Standardizer(std::size_t bound, std::size_t fuel) : bound_(bound), fuel_(fuel) {}

  std::size_t nodes = 0;

  std::optional<Trace> standard(const Term& m, const Term& m2) {
    std::string key = canonical_key(m) + "|" + canonical_key(m2);
    if (auto it = std_memo_.find(key); it != std_memo_.end()) return it->second;
    std::optional<Trace> r;
    SeqSearch s = sequentialize(m, m2, bound_, fuel_);
    nodes += s.nodes;
    if (s.result) {
      Trace head = s.result->head_betav;
      head.append(s.result->head_sigma);
      if (auto in = inner(head.last(), m2)) {
        head.append(*in);
        r = std::move(head);
      }
    }
    std_memo_.emplace(key, r);
    return r;
  }

  std::optional<Trace> inner(const Term& n, const Term& m2) {
    if (alpha_eq(n, m2)) return Trace(n);
    if (m2.is_var()) return std::nullopt;
    if (m2.is_abs()) {
      if (!n.is_abs()) return std::nullopt;
      auto [b, b2] = open_common(n, m2);
      auto sub = standard(b, b2);
      if (!sub) return std::nullopt;
      return lift_trace(*sub, Term::abs(common_binder(n, m2), b), Path{0});
    }
    if (!n.is_app()) return std::nullopt;
    const Term& f = n.fun();
    const Term& a = n.arg();
    const Term& f2 = m2.fun();
    const Term& a2 = m2.arg();
    std::optional<Trace> tf, ta;
    if (is_value(f)) {
      tf = standard(f, f2);
      if (tf) ta = inner(a, a2);
    } else {
      tf = inner(f, f2);
      if (tf) ta = standard(a, a2);
    }
    if (!tf || !ta) return std::nullopt;
    Trace out = lift_trace(*tf, Term::app(f, a), Path{0});
    out.append(lift_trace(*ta, Term::app(tf->last(), a), Path{1}));
    return out;
  }

 private:
  std::size_t bound_;
  std::size_t fuel_;
  std::unordered_map<std::string, std::optional<Trace>> std_memo_;
};

}  // namespace

StdSearch standardize(const Trace& tr, std::size_t fuel) {
  validate_trace(tr);
  Standardizer s(4 * std::max<std::size_t>(1, tr.length()), fuel);
  StdSearch out;
  out.trace = s.standard(tr.start, tr.last());
  out.nodes = s.nodes;
  return out;
}

namespace {

struct StrictRun {
  explicit StrictRun(std::size_t f) : fuel(f) {}
  std::size_t fuel;
  std::size_t spent = 0;
  Outcome::Kind status = Outcome::Kind::NormalForm;
  std::optional<Term> culprit;

  bool spend(const Term& at) {
    if (spent == fuel) {
      status = Outcome::Kind::FuelExhausted;
      culprit = at;
      return false;
    }
    ++spent;
    return true;
  }

  std::optional<Trace> standard(const Term& m) {
    Trace tr(m);
    std::unordered_set<std::string> seen{canonical_key(m)};
    for (auto next = successors(m, Relation::head_betav()); !next.empty();
         next = successors(tr.last(), Relation::head_betav())) {
      if (!seen.insert(canonical_key(next[0].result)).second) {
        status = Outcome::Kind::CycleDetected;
        culprit = next[0].result;
        return std::nullopt;
      }
      if (!spend(tr.last())) return std::nullopt;
      tr.steps.push_back(std::move(next[0]));
    }
    for (auto next = successors(tr.last(), Relation::head_sigma()); !next.empty();
         next = successors(tr.last(), Relation::head_sigma())) {
      if (!spend(tr.last())) return std::nullopt;
      tr.steps.push_back(std::move(next[0]));
    }
    auto in = inner(tr.last());
    if (!in) return std::nullopt;
    tr.append(*in);
    return tr;
  }

  std::optional<Trace> inner(const Term& t) {
    if (t.is_var()) return Trace(t);
    if (t.is_abs()) {
      auto b = standard(t.body());
      if (!b) return std::nullopt;
      return lift_trace(*b, t, Path{0});
    }
    const Term& f = t.fun();
    std::optional<Trace> tf = is_value(f) ? standard(f) : inner(f);
    if (!tf) return std::nullopt;
    Trace out = lift_trace(*tf, t, Path{0});
    std::optional<Trace> ta = is_value(f) ? inner(t.arg()) : standard(t.arg());
    if (!ta) return std::nullopt;
    out.append(lift_trace(*ta, out.last(), Path{1}));
    return out;
  }
};

}  // namespace

Outcome normalize_strict(const Term& m, std::size_t fuel) {
  StrictRun run(fuel);
  auto tr = run.standard(m);
  if (!tr) return Outcome{run.status, *run.culprit, Trace(m), run.spent};
  Term nf = tr->last();
  return Outcome{Outcome::Kind::NormalForm, nf, std::move(*tr), run.spent};
}

namespace {

struct Reacher {
  explicit Reacher(std::size_t f) : fuel(f) {}
  std::size_t fuel;
  std::size_t spent = 0;
  bool complete = true;
  std::unordered_map<std::string, TermSet> std_memo, in_memo;

  bool spend() {
    if (spent >= fuel) {
      complete = false;
      return false;
    }
    ++spent;
    return true;
  }

  TermSet standard(const Term& m) {
    std::string key = canonical_key(m);
    if (auto it = std_memo.find(key); it != std_memo.end()) return it->second;
    TermSet out;
    Term cur = m;
    std::unordered_set<std::string> seen{key};
    bool diverges = false;
    while (auto next = step_head_betav(cur)) {
      if (!seen.insert(canonical_key(*next)).second || !spend()) {
        diverges = true;
        break;
      }
      cur = *next;
    }
    if (!diverges) {
      for (const Term& l : head_sigma_closure(cur)) {
        if (!head_redexes(l).empty()) continue;
        for (const Term& t : inner(l)) out.insert(t);
      }
    }
    std_memo.emplace(key, out);
    return out;
  }

  TermSet inner(const Term& t) {
    std::string key = canonical_key(t);
    if (auto it = in_memo.find(key); it != in_memo.end()) return it->second;
    TermSet out;
    out.insert(t);
    if (t.is_abs()) {
      for (const Term& b : standard(t.body())) out.insert(Term::abs(t.name(), b));
    } else if (t.is_app()) {
      const Term& f = t.fun();
      TermSet fs = is_value(f) ? standard(f) : inner(f);
      TermSet as = is_value(f) ? inner(t.arg()) : standard(t.arg());
      for (const Term& f2 : fs)
        for (const Term& a2 : as) {
          if (!spend()) break;
          out.insert(Term::app(f2, a2));
        }
    }
    in_memo.emplace(key, out);
    return out;
  }
};

}  // namespace

StrictReach strict_standard_reachable(const Term& m, std::size_t fuel) {
  Reacher r(fuel);
  StrictReach out;
  out.terms = r.standard(m);
  out.complete = r.complete;
  return out;
}

Verdict3 strict_standard_exists(const Term& m, const Term& target, std::size_t fuel) {
  StrictReach r = strict_standard_reachable(m, fuel);
  if (r.terms.contains(target)) return Verdict3::Yes;
  return r.complete ? Verdict3::No : Verdict3::Unknown;
}

}  // namespace shuffle
