#include "shuffle/reduction.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "shuffle/errors.hpp"

namespace shuffle {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::BetaV:
      return "betav";
    case Rule::Sigma1:
      return "sigma1";
    case Rule::Sigma3:
      return "sigma3";
  }
  return "?";
}

Rule parse_rule(std::string_view name) {
  for (Rule r : kAllRules)
    if (rule_name(r) == name) return r;
  throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
}

namespace {

struct KindName {
  RelKind kind;
  std::string_view name;
  RuleSet defaults;
};

constexpr KindName kKindNames[] = {
    {RelKind::Full, "full", RuleSet::v()},
    {RelKind::HeadBetaV, "head-betav", RuleSet{Rule::BetaV}},
    {RelKind::HeadSigma, "head-sigma", RuleSet::sigma()},
    {RelKind::HeadV, "head-v", RuleSet::v()},
    {RelKind::InternalV, "internal-v", RuleSet::v()},
    {RelKind::Weak, "weak", RuleSet::v()},
    {RelKind::Stratified, "stratified", RuleSet::v()},
};

Relation parse_one_relation(std::string_view spec) {
  std::string_view base = spec.substr(0, spec.find(':'));
  std::optional<Relation> rel;
  if (base == "v") rel = Relation::full();
  if (base == "betav") rel = Relation::full({Rule::BetaV});
  if (base == "sigma") rel = Relation::full(RuleSet::sigma());
  if (base == "sigma1") rel = Relation::full({Rule::Sigma1});
  if (base == "sigma3") rel = Relation::full({Rule::Sigma3});
  for (const KindName& k : kKindNames)
    if (k.name == base) rel = Relation{k.kind, k.defaults};
  if (!rel) throw std::invalid_argument("unknown relation '" + std::string(base) + "'");
  if (std::size_t colon = spec.find(':'); colon != std::string_view::npos) {
    RuleSet rules;
    std::string_view list = spec.substr(colon + 1);
    while (!list.empty()) {
      std::size_t comma = list.find(',');
      rules = rules | RuleSet{parse_rule(list.substr(0, comma))};
      list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    }
    if (rules.empty()) throw std::invalid_argument("empty rule list in '" + std::string(spec) + "'");
    rel->rules = rules;
  }
  return *rel;
}

}  // namespace

std::vector<Relation> parse_relation(std::string_view spec) {
  std::vector<Relation> out;
  while (true) {
    std::size_t plus = spec.find('+');
    out.push_back(parse_one_relation(spec.substr(0, plus)));
    if (plus == std::string_view::npos) break;
    spec = spec.substr(plus + 1);
  }
  return out;
}

std::string relation_name(const Relation& rel) {
  for (const KindName& k : kKindNames) {
    if (k.kind != rel.kind) continue;
    std::string out(k.name);
    if (rel.rules != k.defaults) {
      char sep = ':';
      for (Rule r : kAllRules) {
        if (!rel.rules.has(r)) continue;
        out += sep;
        out += rule_name(r);
        sep = ',';
      }
    }
    return out;
  }
  return "?";
}

namespace {

bool is_beta_redex(const Term& t) { return t.is_app() && t.fun().is_abs(); }

}  // namespace

std::optional<Term> match_rule(const Term& t, Rule r) {
  if (!t.is_app()) return std::nullopt;
  switch (r) {
    case Rule::BetaV:
      if (t.fun().is_abs() && is_value(t.arg())) return substitute(t.fun().body(), t.fun().name(), t.arg());
      return std::nullopt;
    case Rule::Sigma1: {
      // (\x.M) N L -> (\x.M L) N
      if (!is_beta_redex(t.fun())) return std::nullopt;
      const Term& l = t.arg();
      Term abs = apart_from(t.fun().fun(), l);
      return Term::app(Term::abs(abs.name(), Term::app(abs.body(), l)), t.fun().arg());
    }
    case Rule::Sigma3: {
      // V ((\x.L) N) -> (\x.V L) N
      if (!is_value(t.fun()) || !is_beta_redex(t.arg())) return std::nullopt;
      const Term& v = t.fun();
      Term abs = apart_from(t.arg().fun(), v);
      return Term::app(Term::abs(abs.name(), Term::app(v, abs.body())), t.arg().arg());
    }
  }
  return std::nullopt;
}

namespace {

enum class Scope : std::uint8_t { Full, Weak, Stratified };

void collect(const Term& t, std::vector<std::uint8_t>& path, Scope scope, bool applied, RuleSet rules,
             std::vector<Step>& out) {
  for (Rule r : kAllRules) {
    if (!rules.has(r)) continue;
    // The local contractum; grafted into the whole term by the caller.
    if (auto c = match_rule(t, r)) out.push_back(Step{r, Path(path), std::move(*c)});
  }
  if (t.is_app()) {
    path.push_back(0);
    collect(t.fun(), path, scope, true, rules, out);
    path.back() = 1;
    collect(t.arg(), path, scope == Scope::Full ? Scope::Full : Scope::Weak, false, rules, out);
    path.pop_back();
  } else if (t.is_abs()) {
    if (scope == Scope::Weak && !applied) return;
    path.push_back(0);
    collect(t.body(), path, scope, false, rules, out);
    path.pop_back();
  }
}

std::vector<Step> contextual(const Term& t, Scope scope, RuleSet rules) {
  std::vector<Step> out;
  std::vector<std::uint8_t> path;
  collect(t, path, scope, false, rules, out);
  for (Step& s : out) s.result = replace_at(t, s.path, s.result);
  return out;
}

void head_walk(const Term& t, Path prefix, std::vector<HeadRedex>& out) {
  const Term* head = &t;
  std::vector<const Term*> args;
  while (head->is_app()) {
    args.push_back(&head->arg());
    head = &head->fun();
  }
  if (args.empty()) return;
  std::reverse(args.begin(), args.end());
  std::size_t n = args.size();
  const Term& first = *args[0];
  Path at_first = prefix + Path(std::vector<std::uint8_t>(n - 1, 0));
  if (head->is_abs() && is_value(first)) out.push_back({at_first, Rule::BetaV});
  if (head->is_abs() && n >= 2) out.push_back({prefix + Path(std::vector<std::uint8_t>(n - 2, 0)), Rule::Sigma1});
  if (is_beta_redex(first)) out.push_back({at_first, Rule::Sigma3});
  head_walk(first, at_first.child(1), out);
}

std::vector<Step> head_steps(const Term& t, RuleSet rules) {
  std::vector<Step> out;
  for (const HeadRedex& h : head_redexes(t)) {
    if (!rules.has(h.rule)) continue;
    out.push_back(Step{h.rule, h.path, contract(t, h.path, h.rule)});
  }
  return out;
}

bool step_less(const Step& a, const Step& b) {
  if (a.path != b.path) return a.path < b.path;
  return a.rule < b.rule;
}

}  // namespace

std::vector<Path> redex_positions(const Term& t, Rule r) {
  std::vector<Path> out;
  for (Step& s : contextual(t, Scope::Full, {r})) out.push_back(std::move(s.path));
  return out;
}

Term contract(const Term& t, const Path& p, Rule r) {
  const Term* sub;
  try {
    sub = &subterm_at(t, p);
  } catch (const PathError& e) {
    throw RedexError(e.what());
  }
  auto c = match_rule(*sub, r);
  if (!c) throw RedexError("no " + std::string(rule_name(r)) + " redex at " + p.to_string());
  return replace_at(t, p, *c);
}

std::vector<HeadRedex> head_redexes(const Term& t) {
  std::vector<HeadRedex> out;
  head_walk(t, Path{}, out);
  std::sort(out.begin(), out.end(), [](const HeadRedex& a, const HeadRedex& b) {
    if (a.path != b.path) return a.path < b.path;
    return a.rule < b.rule;
  });
  return out;
}

std::optional<Term> step_head_betav(const Term& t) {
  for (const HeadRedex& h : head_redexes(t))
    if (h.rule == Rule::BetaV) return contract(t, h.path, h.rule);
  return std::nullopt;
}

std::vector<Step> successors(const Term& t, const Relation& rel) {
  switch (rel.kind) {
    case RelKind::Full:
      return contextual(t, Scope::Full, rel.rules);
    case RelKind::Weak:
      return contextual(t, Scope::Weak, rel.rules);
    case RelKind::Stratified:
      return contextual(t, Scope::Stratified, rel.rules);
    case RelKind::HeadBetaV:
      return head_steps(t, rel.rules & RuleSet{Rule::BetaV});
    case RelKind::HeadSigma:
      return head_steps(t, rel.rules & RuleSet::sigma());
    case RelKind::HeadV:
      return head_steps(t, rel.rules);
    case RelKind::InternalV: {
      std::vector<Step> all = contextual(t, Scope::Full, rel.rules);
      if (all.empty()) return all;
      std::unordered_set<std::string> head_keys;
      for (const Step& h : head_steps(t, RuleSet::v())) head_keys.insert(canonical_key(h.result));
      std::erase_if(all, [&](const Step& s) { return head_keys.count(canonical_key(s.result)) != 0; });
      return all;
    }
  }
  return {};
}

std::vector<Step> successors(const Term& t, std::span<const Relation> rels) {
  if (rels.size() == 1) return successors(t, rels[0]);
  std::vector<Step> out;
  for (const Relation& rel : rels) {
    for (Step& s : successors(t, rel)) {
      bool dup = std::any_of(out.begin(), out.end(),
                             [&](const Step& o) { return o.rule == s.rule && o.path == s.path; });
      if (!dup) out.push_back(std::move(s));
    }
  }
  std::stable_sort(out.begin(), out.end(), step_less);
  return out;
}

namespace {

bool any_reduct(const Term& source, const Term& target, RuleSet rules) {
  for (const HeadRedex& h : head_redexes(source))
    if (rules.has(h.rule) && alpha_eq(contract(source, h.path, h.rule), target)) return true;
  return false;
}

}  // namespace

bool is_head_pair(const Term& source, const Term& target) { return any_reduct(source, target, RuleSet::v()); }
bool is_head_betav_pair(const Term& source, const Term& target) {
  return any_reduct(source, target, {Rule::BetaV});
}
bool is_head_sigma_pair(const Term& source, const Term& target) {
  return any_reduct(source, target, RuleSet::sigma());
}

TermSet head_sigma_closure(const Term& t) {
  TermSet seen;
  seen.insert(t);
  for (std::size_t i = 0; i < seen.size(); ++i) {
    Term cur = seen[i];
    for (const Step& s : successors(cur, Relation::head_sigma())) seen.insert(s.result);
  }
  return seen;
}

PathSearch find_path(const Term& from, const Term& to, std::span<const Relation> rels, SearchLimits limits) {
  PathSearch out;
  std::string target = canonical_key(to);
  TermSet nodes;
  std::string start_key = canonical_key(from);
  nodes.insert(from, start_key);
  std::vector<std::pair<std::size_t, Step>> parent;  // index i+1 -> (node, step)
  std::vector<std::size_t> depth{0};
  auto rebuild = [&](std::size_t v) {
    std::vector<Step> steps;
    while (v != 0) {
      steps.push_back(parent[v - 1].second);
      v = parent[v - 1].first;
    }
    Trace tr(from);
    tr.steps.assign(steps.rbegin(), steps.rend());
    return tr;
  };
  if (start_key == target) {
    out.trace = Trace(from);
    out.exhausted = true;
    out.nodes = 1;
    return out;
  }
  bool capped = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (depth[i] >= limits.max_depth) continue;
    Term cur = nodes[i];
    for (Step& s : successors(cur, rels)) {
      std::string key = canonical_key(s.result);
      if (nodes.contains_key(key)) continue;
      if (nodes.size() >= limits.max_nodes) {
        capped = true;
        continue;
      }
      nodes.insert(s.result, key);
      parent.emplace_back(i, std::move(s));
      depth.push_back(depth[i] + 1);
      if (key == target) {
        out.trace = rebuild(nodes.size() - 1);
        out.exhausted = true;
        out.nodes = nodes.size();
        return out;
      }
    }
  }
  out.exhausted = !capped;
  out.nodes = nodes.size();
  return out;
}

std::string_view outcome_name(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::NormalForm:
      return "normal-form";
    case Outcome::Kind::CycleDetected:
      return "cycle";
    case Outcome::Kind::FuelExhausted:
      return "fuel-exhausted";
  }
  return "?";
}

namespace {

Outcome leftmost(const Term& t, std::span<const Relation> rels, std::size_t fuel) {
  Trace tr(t);
  std::unordered_map<std::string, std::size_t> seen{{canonical_key(t), 0}};
  Term cur = t;
  for (std::size_t spent = 0;; ++spent) {
    std::vector<Step> succ = successors(cur, rels);
    if (succ.empty()) return Outcome{Outcome::Kind::NormalForm, cur, std::move(tr), spent};
    if (spent == fuel) return Outcome{Outcome::Kind::FuelExhausted, cur, std::move(tr), spent};
    Step& s = succ.front();
    cur = s.result;
    tr.steps.push_back(std::move(s));
    if (!seen.emplace(canonical_key(cur), tr.length()).second)
      return Outcome{Outcome::Kind::CycleDetected, cur, std::move(tr), spent + 1};
  }
}

struct Edge {
  std::size_t to;
  Step step;
};

Trace path_trace(const Term& start, const std::vector<const Step*>& steps) {
  Trace tr(start);
  for (const Step* s : steps) tr.steps.push_back(*s);
  return tr;
}

Outcome exhaustive(const Term& t, std::span<const Relation> rels, std::size_t fuel) {
  TermSet nodes;
  nodes.insert(t);
  std::vector<std::vector<Edge>> adj;
  std::vector<std::pair<std::size_t, std::size_t>> parent{{0, 0}};  // (node, edge index)
  std::optional<std::size_t> normal;
  std::size_t expanded = 0;
  while (expanded < nodes.size() && expanded < fuel) {
    std::size_t i = expanded++;
    Term cur = nodes[i];
    adj.emplace_back();
    for (Step& s : successors(cur, rels)) {
      std::string key = canonical_key(s.result);
      std::size_t to;
      if (nodes.insert(s.result, key)) {
        to = nodes.size() - 1;
        parent.emplace_back(i, adj[i].size());
      } else {
        to = static_cast<std::size_t>(nodes.find(s.result));
      }
      adj[i].push_back(Edge{to, std::move(s)});
    }
    if (adj[i].empty() && !normal) normal = i;
  }
  bool complete = expanded == nodes.size();

  // Cycle search over the expanded part, iterative DFS from the root.
  enum Color : std::uint8_t { White, Gray, Black };
  std::vector<Color> color(nodes.size(), White);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (node, next edge)
  std::vector<const Step*> dfs_steps;
  std::optional<std::pair<std::vector<const Step*>, std::size_t>> cycle;
  stack.emplace_back(0, 0);
  color[0] = Gray;
  while (!stack.empty() && !cycle) {
    auto& [u, next] = stack.back();
    if (u >= adj.size() || next == adj[u].size()) {
      color[u] = Black;
      stack.pop_back();
      if (!dfs_steps.empty() && !stack.empty()) dfs_steps.pop_back();
      continue;
    }
    const Edge& e = adj[u][next++];
    if (color[e.to] == Gray) {
      auto steps = dfs_steps;
      steps.push_back(&e.step);
      cycle.emplace(std::move(steps), e.to);
    } else if (color[e.to] == White) {
      color[e.to] = Gray;
      dfs_steps.push_back(&e.step);
      stack.emplace_back(e.to, 0);
    }
  }

  Outcome out{Outcome::Kind::FuelExhausted, nodes[nodes.size() - 1], Trace(t), expanded, complete, cycle.has_value()};
  if (normal) {
    std::vector<const Step*> steps;
    for (std::size_t v = *normal; v != 0; v = parent[v].first) steps.push_back(&adj[parent[v].first][parent[v].second].step);
    std::reverse(steps.begin(), steps.end());
    out.kind = Outcome::Kind::NormalForm;
    out.term = nodes[*normal];
    out.trace = path_trace(t, steps);
  } else if (cycle) {
    out.kind = Outcome::Kind::CycleDetected;
    out.term = nodes[cycle->second];
    out.trace = path_trace(t, cycle->first);
  } else if (!complete) {
    out.term = nodes[expanded - (expanded > 0 ? 1 : 0)];
  }
  return out;
}

}  // namespace

Outcome normalize(const Term& t, const Relation& rel, Strategy strategy, std::size_t fuel) {
  return normalize(t, std::span<const Relation>(&rel, 1), strategy, fuel);
}

Outcome normalize(const Term& t, std::span<const Relation> rels, Strategy strategy, std::size_t fuel) {
  if (strategy == Strategy::Leftmost) return leftmost(t, rels, fuel);
  return exhaustive(t, rels, fuel);
}

}  // namespace shuffle
