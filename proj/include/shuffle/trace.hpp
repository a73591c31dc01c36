#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "shuffle/rule.hpp"
#include "shuffle/syntax.hpp"
#include "shuffle/term.hpp"

namespace shuffle {

/// A reduction sequence: the start term and the steps fired from it.
struct Trace {
  Term start;
  std::vector<Step> steps;

  explicit Trace(Term s) : start(std::move(s)) {}

  std::size_t length() const noexcept { return steps.size(); }
  /// Term number i; 0 is the start.
  const Term& term_at(std::size_t i) const { return i == 0 ? start : steps[i - 1].result; }
  const Term& last() const { return term_at(steps.size()); }
  std::vector<Term> terms() const;

  void append(const Trace& suffix);
};

/// Line format:
///   term: <term>
///   step: <rule> @ <path> -> <term>
/// Lines starting with `#` and blank lines are skipped. When `-> <term>` is
/// omitted the result is computed by contraction.
std::string format_trace(const Trace& tr, const PrintOptions& options = {});
Trace parse_trace(std::string_view text);

/// Throws TraceError unless every step replays up to alpha-equivalence.
void validate_trace(const Trace& tr);

}  // namespace shuffle
