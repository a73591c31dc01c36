#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "shuffle/path.hpp"
#include "shuffle/term.hpp"

namespace shuffle {

enum class Rule : std::uint8_t { BetaV, Sigma1, Sigma3 };

inline constexpr Rule kAllRules[] = {Rule::BetaV, Rule::Sigma1, Rule::Sigma3};

std::string_view rule_name(Rule r);
/// Accepts `betav`, `sigma1`, `sigma3`; throws std::invalid_argument.
Rule parse_rule(std::string_view name);

class RuleSet {
 public:
  constexpr RuleSet() = default;
  constexpr RuleSet(std::initializer_list<Rule> rules) {
    for (Rule r : rules) bits_ |= bit(r);
  }
  static constexpr RuleSet v() { return {Rule::BetaV, Rule::Sigma1, Rule::Sigma3}; }
  static constexpr RuleSet sigma() { return {Rule::Sigma1, Rule::Sigma3}; }

  constexpr bool has(Rule r) const { return (bits_ & bit(r)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr RuleSet operator&(RuleSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr RuleSet operator|(RuleSet o) const { return from_bits(bits_ | o.bits_); }
  friend constexpr bool operator==(RuleSet, RuleSet) = default;

 private:
  static constexpr std::uint8_t bit(Rule r) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r)); }
  static constexpr RuleSet from_bits(std::uint8_t b) {
    RuleSet s;
    s.bits_ = b;
    return s;
  }
  std::uint8_t bits_ = 0;
};

struct Step {
  Rule rule;
  Path path;
  Term result;
};

}  // namespace shuffle
