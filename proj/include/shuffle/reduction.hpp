#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shuffle/rule.hpp"
#include "shuffle/term.hpp"
#include "shuffle/trace.hpp"

namespace shuffle {

enum class RelKind : std::uint8_t { Full, HeadBetaV, HeadSigma, HeadV, InternalV, Weak, Stratified };

/// A reduction relation: a closure of the root rules in `rules`. For the head
/// kinds the rules further restrict which head redexes may fire; InternalV is
/// Full(rules) minus every pair that is also a head v-step.
struct Relation {
  RelKind kind = RelKind::Full;
  RuleSet rules = RuleSet::v();

  static Relation full(RuleSet rules = RuleSet::v()) { return {RelKind::Full, rules}; }
  static Relation head_betav() { return {RelKind::HeadBetaV, {Rule::BetaV}}; }
  static Relation head_sigma(RuleSet rules = RuleSet::sigma()) { return {RelKind::HeadSigma, rules}; }
  static Relation head_v() { return {RelKind::HeadV, RuleSet::v()}; }
  static Relation internal_v(RuleSet rules = RuleSet::v()) { return {RelKind::InternalV, rules}; }
  static Relation weak() { return {RelKind::Weak, RuleSet::v()}; }
  static Relation stratified() { return {RelKind::Stratified, RuleSet::v()}; }

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// `full`, `v`, `betav`, `sigma`, `head-betav`, `head-sigma`, `head-v`,
/// `internal-v`, `weak`, `stratified`, each optionally followed by
/// `:rule,rule`; several joined by `+` form a union. Throws
/// std::invalid_argument.
std::vector<Relation> parse_relation(std::string_view spec);
std::string relation_name(const Relation& rel);

/// Root contractum of `t` under `r`, if `t` is an r-redex. The binder of a
/// sigma redex is renamed only when the side condition demands it.
std::optional<Term> match_rule(const Term& t, Rule r);

/// All positions of r-redexes, in pre-order.
std::vector<Path> redex_positions(const Term& t, Rule r);

/// Contracts the r-redex at `p`; throws RedexError if there is none.
Term contract(const Term& t, const Path& p, Rule r);

struct HeadRedex {
  Path path;
  Rule rule;
  friend bool operator==(const HeadRedex&, const HeadRedex&) = default;
};

/// Redexes fireable by the inductive head rules, ordered by path then rule.
std::vector<HeadRedex> head_redexes(const Term& t);

std::optional<Term> step_head_betav(const Term& t);

/// One-step reducts ordered by path, then BetaV < Sigma1 < Sigma3.
std::vector<Step> successors(const Term& t, const Relation& rel);
/// Union of relations; a (path, rule) pair is listed once.
std::vector<Step> successors(const Term& t, std::span<const Relation> rels);

/// Pair-level test: `target` is a head v-reduct of `source`.
bool is_head_pair(const Term& source, const Term& target);
bool is_head_betav_pair(const Term& source, const Term& target);
bool is_head_sigma_pair(const Term& source, const Term& target);

/// Every term reachable by head sigma steps (including `t`), breadth-first.
TermSet head_sigma_closure(const Term& t);

struct SearchLimits {
  std::size_t max_depth = static_cast<std::size_t>(-1);
  std::size_t max_nodes = 100000;
};

struct PathSearch {
  std::optional<Trace> trace;
  /// Every term within `max_depth` was visited, so a missing trace means no
  /// such path exists within that depth.
  bool exhausted = false;
  std::size_t nodes = 0;
};

/// Shortest path from `from` to a term alpha-equal to `to`, breadth-first.
PathSearch find_path(const Term& from, const Term& to, std::span<const Relation> rels, SearchLimits limits);
inline PathSearch find_path(const Term& from, const Term& to, const Relation& rel, SearchLimits limits) {
  return find_path(from, to, std::span<const Relation>(&rel, 1), limits);
}

enum class Strategy : std::uint8_t { Leftmost, Exhaustive };

struct Outcome {
  enum class Kind : std::uint8_t { NormalForm, CycleDetected, FuelExhausted };
  Kind kind;
  /// The normal form, the loop-entry term, or the last term visited.
  Term term;
  Trace trace;
  std::size_t fuel_spent = 0;
  /// Exhaustive only: every reachable term was expanded.
  bool graph_complete = false;
  /// Exhaustive only: the explored graph contains a cycle.
  bool graph_cyclic = false;
};

std::string_view outcome_name(Outcome::Kind k);

/// Leftmost follows the first successor and counts steps against `fuel`;
/// Exhaustive expands the reachable graph breadth-first and counts expanded
/// terms. A normal form is preferred over a cycle when both are found.
Outcome normalize(const Term& t, const Relation& rel, Strategy strategy, std::size_t fuel);
Outcome normalize(const Term& t, std::span<const Relation> rels, Strategy strategy, std::size_t fuel);

}  // namespace shuffle
