#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shuffle/reduction.hpp"
#include "shuffle/syntax.hpp"

namespace shuffle {

struct GraphEdge {
  std::size_t from;
  std::size_t to;
  Step step;
  /// Pair-level head v-step; internal otherwise.
  bool head;
};

struct ReductionGraph {
  TermSet nodes;  // node 0 is the start term
  std::vector<GraphEdge> edges;
  /// The cap was reached before every reachable term was added.
  bool truncated = false;
};

ReductionGraph reduction_graph(const Term& t, std::span<const Relation> rels, std::size_t node_cap);
inline ReductionGraph reduction_graph(const Term& t, const Relation& rel, std::size_t node_cap) {
  return reduction_graph(t, std::span<const Relation>(&rel, 1), node_cap);
}

/// Nodes labelled by printed terms, edges `rule@path`; internal steps dashed.
std::string to_dot(const ReductionGraph& g, const PrintOptions& options = {});

}  // namespace shuffle
