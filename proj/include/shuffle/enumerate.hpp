#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "shuffle/term.hpp"

namespace shuffle {

struct TermGen {
  enum class Mode : std::uint8_t { Exhaustive, Random };

  /// Number of AST nodes.
  std::size_t max_size = 5;
  std::vector<Ident> pool;
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  /// Random mode: how many terms to draw.
  std::size_t count = 100;

  static TermGen exhaustive(std::size_t max_size, std::vector<Ident> pool);
  static TermGen random(std::size_t max_size, std::vector<Ident> pool, std::uint64_t seed, std::size_t count);
};

inline constexpr std::size_t kMaxExhaustiveSize = 12;

/// Exhaustive mode lists every alpha-class of size <= max_size once, by size
/// and then structurally (bound variables innermost first, pool variables,
/// abstractions, applications by split).
/// Binders take the first of x, y, z, u, v, w, ... that is neither free in
/// the abstraction nor bound by an enclosing one. Throws GuardError when
/// max_size exceeds kMaxExhaustiveSize.
std::vector<Term> enumerate_terms(const TermGen& gen);

std::vector<Ident> make_pool(std::initializer_list<const char*> names);

/// Closed abstractions of size <= max_size, by size and then printed form.
std::vector<Term> closed_values(std::size_t max_size);

/// Closed terms of size <= max_size, same order.
std::vector<Term> closed_terms(std::size_t max_size);

}  // namespace shuffle
