#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shuffle/enumerate.hpp"
#include "shuffle/reduction.hpp"
#include "shuffle/term.hpp"

namespace shuffle {

struct Failure {
  /// Position of the term in the corpus; fixtures use 0.
  std::size_t index = 0;
  /// Printed counterexample, parseable back with the term or trace syntax.
  std::string detail;
};

/// What one check over one term produced.
struct CheckResult {
  std::vector<std::string> failures;
  /// Sub-checks left undecided by a search bound.
  std::size_t inconclusive = 0;
  /// Sub-checks carried out.
  std::size_t checked = 0;

  void fail(std::string detail) { failures.push_back(std::move(detail)); }
  void merge(const CheckResult& other);
};

struct RunOptions {
  /// Budget handed to semi-decisions (steps or expanded terms).
  std::size_t fuel = 2000;
  std::size_t jobs = 1;
};

struct Property {
  std::string id;
  std::string statement;
  /// Default corpus; fixtures ignore it.
  TermGen corpus;
  bool fixture = false;
  std::function<CheckResult(const Term&, const RunOptions&)> check;
};

const std::vector<Property>& property_catalog();
const Property* find_property(const std::string& id);

struct PropertyReport {
  std::string id;
  std::size_t corpus_size = 0;
  std::size_t checked = 0;
  std::size_t inconclusive = 0;
  std::vector<Failure> failures;
  double elapsed_ms = 0;
  std::size_t max_size = 0;
  std::vector<std::string> pool;
  std::optional<std::uint64_t> seed;

  bool passed() const { return failures.empty(); }
};

/// Runs a property over `gen` (or its default corpus), partitioning terms
/// across `options.jobs` threads; failures are ordered by corpus index.
PropertyReport run_property(const Property& p, const RunOptions& options, const std::optional<TermGen>& gen = {});

/// One JSON object, no newline. Timings are left out unless asked for, so
/// that repeated runs print the same bytes.
std::string report_json(const PropertyReport& r, bool timing = false);
/// Fixed-width table with a header line.
std::string report_table(const std::vector<PropertyReport>& reports, bool timing = false);

/// Both endpoints reach a common term within `depth` rel-steps. `complete`
/// means both reachable sets were explored in full.
struct JoinResult {
  bool joined = false;
  bool complete = false;
};
JoinResult joinable(const Term& a, const Term& b, const Relation& rel, std::size_t depth, std::size_t node_cap);

/// The two fixed sigma-order counterexamples: M, the intermediate term, N.
struct SigmaOrderFixture {
  Term m;
  Term mid;
  Term n;
  Rule first;
  Rule second;
};
std::vector<SigmaOrderFixture> sigma_order_fixtures();

/// Every head sigma sequence from m that fires only `first` and then only
/// `second` avoids n; and the displayed first;second factorization exists.
struct SigmaOrderCheck {
  bool displayed_exists = false;
  bool reordered_exists = false;
  std::size_t explored = 0;
};
SigmaOrderCheck check_sigma_order(const SigmaOrderFixture& f);

}  // namespace shuffle
