#include "shuffle/graph.hpp"

namespace shuffle {

ReductionGraph reduction_graph(const Term& t, std::span<const Relation> rels, std::size_t node_cap) {
  ReductionGraph g;
  g.nodes.insert(t);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    Term cur = g.nodes[i];
    for (Step& s : successors(cur, rels)) {
      long to = g.nodes.find(s.result);
      if (to < 0) {
        if (g.nodes.size() >= node_cap) {
          g.truncated = true;
          continue;
        }
        g.nodes.insert(s.result);
        to = static_cast<long>(g.nodes.size() - 1);
      }
      bool head = is_head_pair(cur, s.result);
      g.edges.push_back(GraphEdge{i, static_cast<std::size_t>(to), std::move(s), head});
    }
  }
  return g;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const ReductionGraph& g, const PrintOptions& options) {
  std::string out = "digraph reduction {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + escape(print(g.nodes[i], options)) + "\"];\n";
  for (const GraphEdge& e : g.edges) {
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"";
    out += rule_name(e.step.rule);
    out += "@" + e.step.path.to_string() + "\"";
    out += e.head ? ", style=solid" : ", style=dashed";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace shuffle
