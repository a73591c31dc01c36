#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shuffle/term.hpp"
#include "shuffle/trace.hpp"
#include "shuffle/verdict.hpp"

namespace shuffle {

enum class ParRule : std::uint8_t { BetaV, Sigma1, Sigma3, Lambda, Var, RightInt, LambdaInt, VarInt };

std::string_view par_rule_name(ParRule r);

/// A derivation tree for M => N (or M =>int N for the *Int rules).
struct ParDerivation {
  ParRule rule;
  std::vector<ParDerivation> premises;
  Term source;
  Term target;

  bool internal() const { return rule == ParRule::RightInt || rule == ParRule::LambdaInt || rule == ParRule::VarInt; }
};

/// One line per node: rule name and conclusion, premises indented.
std::string format_derivation(const ParDerivation& d, const PrintOptions& options = {});

/// Replays a derivation: each node must instantiate its rule with the right
/// premise count and shapes.
bool derivation_valid(const ParDerivation& d);

/// M => N, trying rules in the order betav, sigma1, sigma3, lambda, var.
std::optional<ParDerivation> par_check(const Term& m, const Term& n);
/// M =>int N.
std::optional<ParDerivation> par_int_check(const Term& m, const Term& n);

struct ParReducts {
  TermSet terms;
  /// Some product exceeded the cap; `terms` is then a subset.
  bool truncated = false;
};

/// {N : M => N}, enumerated rule by rule.
ParReducts par_reducts(const Term& m, std::size_t cap = 100000);
/// {N : M =>int N}.
ParReducts par_int_reducts(const Term& m, std::size_t cap = 100000);

/// M => N together with M ⊸βv* L ⊸σ* K =>int N.
struct StrongPar {
  Verdict3 verdict = Verdict3::Unknown;
  std::optional<Trace> head_betav;  // M to L
  std::optional<Trace> head_sigma;  // L to K
  std::optional<ParDerivation> internal;
  std::size_t fuel_spent = 0;
};

/// Follows the head betav chain of `m` for at most `fuel` steps; at every
/// point tries each head sigma reduct.
StrongPar strong_par_check(const Term& m, const Term& n, std::size_t fuel);

}  // namespace shuffle
