#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shuffle/reduction.hpp"
#include "shuffle/trace.hpp"
#include "shuffle/verdict.hpp"

namespace shuffle {

struct StdVerdict {
  enum class Kind : std::uint8_t {
    StandardHead,
    Standard,
    StandardInner,
    StrictStandardHead,
    StrictStandard,
    NotStandard
  };
  Kind kind = Kind::NotStandard;
  /// Head verdicts: number of leading head betav steps.
  std::size_t split = 0;
  /// NotStandard: 1-based number of the first step whose prefix is rejected.
  std::size_t step = 0;
  std::string reason;

  bool accepted() const noexcept { return kind != Kind::NotStandard; }
};

/// STANDARD, STANDARD-HEAD k=<k>, STRICT-STANDARD, NOT-STANDARD @ step <i>: <reason>, ...
std::string format_verdict(const StdVerdict& v);

// The checkers judge the sequence of terms only; a pair counts as a head
// step whenever it is one, whatever path the trace recorded.
// All of them throw TraceError on traces that do not replay.
StdVerdict check_standard_head(const Trace& tr);
StdVerdict check_strict_standard_head(const Trace& tr);
StdVerdict check_standard(const Trace& tr);
StdVerdict check_standard_inner(const Trace& tr);
StdVerdict check_strict_standard(const Trace& tr);

/// M ⊸βv* L ⊸σ* K →int* M'.
struct Factorization {
  Trace head_betav;
  Trace head_sigma;
  Trace internal;

  Trace joined() const;
};

struct SeqSearch {
  std::optional<Factorization> result;
  std::size_t nodes = 0;
};

/// Walks the head betav chain of `m` (at most `fuel` steps); at the first
/// point where some head sigma reduct reaches `m2` by at most `len_bound`
/// internal steps, returns the factorization with the shortest internal part.
SeqSearch sequentialize(const Term& m, const Term& m2, std::size_t len_bound, std::size_t fuel);

struct StdSearch {
  std::optional<Trace> trace;
  std::size_t nodes = 0;
};

/// A standard sequence with the endpoints of `tr`, built by sequentializing
/// and recursing into subterms. Internal searches are bounded by
/// `4 * max(1, tr.length())` steps.
StdSearch standardize(const Trace& tr, std::size_t fuel = 10000);

/// Head betav to head-betav-normal form, head sigma (first successor) to
/// head-v-normal form, then the subterms left to right. On CycleDetected
/// `term` is the subterm whose head betav chain loops and `trace` is empty.
Outcome normalize_strict(const Term& m, std::size_t fuel);

struct StrictReach {
  TermSet terms;
  /// False when fuel ran out; `terms` is then a subset.
  bool complete = true;
};

/// Every last term of a strict standard sequence from `m`.
StrictReach strict_standard_reachable(const Term& m, std::size_t fuel);
Verdict3 strict_standard_exists(const Term& m, const Term& target, std::size_t fuel);

/// Lifts a trace of a subterm into `whole`, whose subterm at `at` is the
/// trace's start.
Trace lift_trace(const Trace& sub, const Term& whole, const Path& at);

}  // namespace shuffle
