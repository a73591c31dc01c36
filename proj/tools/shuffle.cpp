// shuffle: command-line front end for the term-rewriting engine.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shuffle/analysis.hpp"
#include "shuffle/enumerate.hpp"
#include "shuffle/errors.hpp"
#include "shuffle/graph.hpp"
#include "shuffle/harness.hpp"
#include "shuffle/reduction.hpp"
#include "shuffle/standardization.hpp"
#include "shuffle/syntax.hpp"
#include "shuffle/trace.hpp"

using namespace shuffle;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

// A bad value for a named flag or argument.
struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& message) : std::runtime_error(flag + ": " + message) {}
};

struct Globals {
  bool json = false;
  bool unicode = false;
  std::size_t fuel = 10000;
  bool fuel_given = false;
};

std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string read_source(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError(path, "cannot open file");
  return read_all(in);
}

// Terms given inline, followed by the nonblank, non-comment lines of each file.
std::vector<Term> load_terms(const std::vector<std::string>& inline_terms, const std::vector<std::string>& files) {
  std::vector<Term> out;
  auto add = [&](const std::string& text, const std::string& where) {
    try {
      out.push_back(parse(text));
    } catch (const SyntaxError& e) {
      throw UsageError(where, e.what());
    }
  };
  for (const std::string& t : inline_terms) add(t, "TERM");
  for (const std::string& f : files) {
    std::istringstream lines(read_source(f));
    std::string line;
    while (std::getline(lines, line)) {
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      add(line, f);
    }
  }
  if (out.empty()) throw UsageError("TERM", "no term given");
  return out;
}

std::vector<Relation> load_relation(const std::string& spec) {
  try {
    return parse_relation(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--rel", e.what());
  }
}

json trace_json(const Trace& tr, const PrintOptions& po) {
  json steps = json::array();
  for (const Step& s : tr.steps)
    steps.push_back({{"rule", rule_name(s.rule)}, {"path", s.path.to_string()}, {"term", print(s.result, po)}});
  return steps;
}

Outcome evaluate(const Term& t, const std::string& strategy, std::size_t fuel) {
  if (strategy == "head-betav") return normalize(t, Relation::head_betav(), Strategy::Leftmost, fuel);
  if (strategy == "head-v") return normalize(t, Relation::head_v(), Strategy::Leftmost, fuel);
  if (strategy == "strict-standard") return normalize_strict(t, fuel);
  if (strategy == "weak") return normalize(t, Relation::weak(), Strategy::Leftmost, fuel);
  if (strategy == "stratified") return normalize(t, Relation::stratified(), Strategy::Leftmost, fuel);
  if (strategy == "leftmost-v") return normalize(t, Relation::full(), Strategy::Leftmost, fuel);
  return normalize(t, Relation::full(), Strategy::Exhaustive, fuel);
}

int cmd_parse(const Globals& g, const std::vector<Term>& terms) {
  PrintOptions po{g.unicode, false};
  for (const Term& t : terms) {
    if (!g.json) {
      std::cout << print(t, po) << '\n';
      continue;
    }
    json j;
    j["term"] = print(t, po);
    j["size"] = t.size();
    j["free"] = sorted_names(free_vars(t));
    j["value"] = is_value(t);
    j["key"] = canonical_key(t);
    std::cout << j.dump() << '\n';
  }
  return kOk;
}

int cmd_eval(const Globals& g, const std::vector<Term>& terms, const std::string& strategy, bool emit_trace) {
  PrintOptions po{g.unicode, false};
  for (const Term& t : terms) {
    Outcome o = evaluate(t, strategy, g.fuel);
    if (g.json) {
      json j;
      j["term"] = print(t, po);
      j["strategy"] = strategy;
      j["outcome"] = outcome_name(o.kind);
      j["result"] = print(o.term, po);
      j["steps"] = o.trace.length();
      j["fuel_spent"] = o.fuel_spent;
      j["trace"] = trace_json(o.trace, po);
      std::cout << j.dump() << '\n';
    } else if (emit_trace) {
      std::cout << format_trace(o.trace, po) << "# " << outcome_name(o.kind) << ": " << print(o.term, po) << '\n';
    } else {
      std::cout << print(o.trace.start, po) << '\n';
      for (const Step& s : o.trace.steps)
        std::cout << "  " << rule_name(s.rule) << " @ " << s.path.to_string() << " -> " << print(s.result, po) << '\n';
      std::cout << outcome_name(o.kind) << ": " << print(o.term, po) << '\n';
    }
  }
  return kOk;
}

int cmd_trace(const Globals& g, const std::vector<Term>& terms, const std::string& rel) {
  PrintOptions po{g.unicode, false};
  std::vector<Relation> rels = load_relation(rel);
  for (const Term& t : terms) {
    Outcome o = normalize(t, rels, Strategy::Leftmost, g.fuel);
    if (g.json) {
      json j;
      j["term"] = print(t, po);
      j["rel"] = rel;
      j["outcome"] = outcome_name(o.kind);
      j["trace"] = trace_json(o.trace, po);
      std::cout << j.dump() << '\n';
    } else {
      std::cout << format_trace(o.trace, po) << "# " << outcome_name(o.kind) << '\n';
    }
  }
  return kOk;
}

int cmd_check(const Globals& g, const std::string& file, const std::string& kind) {
  std::string text = read_source(file);
  auto report = [&](bool ok, const std::string& verdict, const StdVerdict* v) {
    if (g.json) {
      json j;
      j["kind"] = kind;
      j["verdict"] = verdict;
      j["accepted"] = ok;
      if (v && !ok) {
        j["step"] = v->step;
        j["reason"] = v->reason;
      }
      std::cout << j.dump() << '\n';
    } else {
      std::cout << verdict << '\n';
    }
    return ok ? kOk : kCheckFailed;
  };
  Trace tr(Term::var("x"));
  try {
    tr = parse_trace(text);
    validate_trace(tr);
  } catch (const std::exception& e) {
    return report(false, std::string("INVALID: ") + e.what(), nullptr);
  }
  if (kind == "trace-valid") return report(true, "VALID", nullptr);
  StdVerdict v = kind == "standard"        ? check_standard(tr)
                 : kind == "standard-head" ? check_standard_head(tr)
                 : kind == "strict"        ? check_strict_standard(tr)
                                           : check_standard_inner(tr);
  return report(v.accepted(), format_verdict(v), &v);
}

int cmd_graph(const Globals& g, const std::vector<Term>& terms, const std::string& rel, bool dot) {
  PrintOptions po{g.unicode, false};
  std::vector<Relation> rels = load_relation(rel);
  for (const Term& t : terms) {
    ReductionGraph gr = reduction_graph(t, rels, g.fuel);
    if (dot) {
      std::cout << to_dot(gr, po);
      continue;
    }
    if (g.json) {
      json j;
      j["term"] = print(t, po);
      j["rel"] = rel;
      j["truncated"] = gr.truncated;
      json nodes = json::array();
      for (const Term& n : gr.nodes) nodes.push_back(print(n, po));
      j["nodes"] = nodes;
      json edges = json::array();
      for (const GraphEdge& e : gr.edges)
        edges.push_back({{"from", e.from},
                         {"to", e.to},
                         {"rule", rule_name(e.step.rule)},
                         {"path", e.step.path.to_string()},
                         {"head", e.head}});
      j["edges"] = edges;
      std::cout << j.dump() << '\n';
      continue;
    }
    std::cout << "nodes:\n";
    for (std::size_t i = 0; i < gr.nodes.size(); ++i) std::cout << "  " << i << ": " << print(gr.nodes[i], po) << '\n';
    std::cout << "edges:\n";
    for (const GraphEdge& e : gr.edges)
      std::cout << "  " << e.from << " -> " << e.to << " " << rule_name(e.step.rule) << "@" << e.step.path.to_string()
                << (e.head ? " head" : " internal") << '\n';
    if (gr.truncated) std::cout << "truncated at " << g.fuel << " nodes\n";
  }
  return kOk;
}

struct AnalyzeOptions {
  std::string query = "halts";
  std::string with;
  std::size_t val_size = 5;
  std::size_t arg_count = 2;
  std::size_t arg_size = 5;
  std::size_t contexts = 50;
  std::size_t context_size = 5;
};

int cmd_analyze(const Globals& g, const std::vector<Term>& terms, const AnalyzeOptions& a) {
  PrintOptions po{g.unicode, false};
  std::optional<Term> other;
  if (a.query == "obs-equiv") {
    if (a.with.empty()) throw UsageError("--with", "required by --query obs-equiv");
    other = load_terms({a.with}, {})[0];
  }
  for (const Term& t : terms) {
    Analysis r;
    if (a.query == "halts") r = halts(t, g.fuel);
    if (a.query == "head-v") r = head_v_eval(t, g.fuel);
    if (a.query == "pv") r = potentially_valuable(t, g.fuel);
    if (a.query == "solvable") r = solvable(t, g.fuel);
    if (a.query == "pv-oracle") r = betav_pv_oracle(t, a.val_size, g.fuel);
    if (a.query == "solv-oracle") r = betav_solv_oracle(t, a.arg_count, a.arg_size, g.fuel);
    if (a.query == "obs-equiv") r = obs_equiv_sample(t, *other, a.contexts, a.context_size, g.fuel);
    if (g.json) {
      json j;
      j["term"] = print(t, po);
      j["query"] = a.query;
      j["verdict"] = verdict_name(r.verdict);
      j["witness"] = r.witness;
      j["fuel_spent"] = r.fuel_spent;
      std::cout << j.dump() << '\n';
    } else {
      std::cout << print(t, po) << ": " << a.query << " " << verdict_name(r.verdict);
      if (!r.witness.empty()) std::cout << " (" << r.witness << ")";
      std::cout << '\n';
    }
  }
  return kOk;
}

struct FuzzOptions {
  bool all = false;
  bool list = false;
  std::vector<std::string> properties;
  std::optional<std::size_t> max_size;
  std::optional<std::uint64_t> seed;
  std::size_t count = 200;
  std::size_t jobs = 1;
};

int cmd_fuzz(const Globals& g, const FuzzOptions& f) {
  if (f.list) {
    for (const Property& p : property_catalog()) std::cout << p.id << "  " << p.statement << '\n';
    return kOk;
  }
  std::vector<const Property*> chosen;
  if (f.all) {
    for (const Property& p : property_catalog()) chosen.push_back(&p);
  } else {
    for (const std::string& id : f.properties) {
      const Property* p = find_property(id);
      if (!p) throw UsageError("--property", "unknown property " + id);
      chosen.push_back(p);
    }
  }
  if (chosen.empty()) throw UsageError("fuzz", "one of --all, --property or --list is required");
  if (f.max_size && *f.max_size > kMaxExhaustiveSize && !f.seed)
    throw UsageError("--max-size", "exhaustive corpora stop at " + std::to_string(kMaxExhaustiveSize));

  RunOptions o;
  o.jobs = f.jobs;
  if (g.fuel_given) o.fuel = g.fuel;
  auto start = std::chrono::steady_clock::now();
  std::vector<PropertyReport> reports;
  for (const Property* p : chosen) {
    std::optional<TermGen> gen;
    if (!p->fixture && (f.max_size || f.seed)) {
      TermGen t = p->corpus;
      if (f.max_size) t.max_size = *f.max_size;
      if (f.seed) t = TermGen::random(t.max_size, t.pool, *f.seed, f.count);
      gen = t;
    }
    reports.push_back(run_property(*p, o, gen));
    if (g.json) std::cout << report_json(reports.back()) << std::endl;
  }
  bool ok = true;
  for (const PropertyReport& r : reports) ok = ok && r.passed();
  if (!g.json) {
    std::cout << report_table(reports);
    for (const PropertyReport& r : reports)
      for (const Failure& fl : r.failures) std::cout << "FAIL " << r.id << " #" << fl.index << ": " << fl.detail << '\n';
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cerr << reports.size() << " properties in " << static_cast<long long>(ms) << " ms\n";
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shuffle: reduction, standardization and analysis for the shuffling call-by-value lambda calculus"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output (JSON lines)");
  app.add_flag("--unicode", g.unicode, "Print λ instead of a backslash");
  CLI::Option* fuel = app.add_option("--fuel", g.fuel, "Step or node budget (default 10000)");

  std::vector<std::string> term_args, files;
  auto term_inputs = [&](CLI::App* sub) {
    sub->add_option("TERM", term_args, "Terms; I and D abbreviate \\x.x and \\x.x x");
    sub->add_option("-f,--file", files, "Read terms from a file, one per line ('-' for stdin)");
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "Parse and print terms");
  term_inputs(parse_cmd);

  std::string strategy = "head-betav";
  bool emit_trace = false;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate under a strategy");
  term_inputs(eval_cmd);
  eval_cmd->add_option("--strategy", strategy, "Evaluation strategy")
      ->check(CLI::IsMember(
          {"head-betav", "head-v", "strict-standard", "weak", "stratified", "leftmost-v", "exhaustive-v"}));
  eval_cmd->add_flag("--emit-trace", emit_trace, "Print the trace in the trace text format");

  std::string rel = "full";
  CLI::App* trace_cmd = app.add_subcommand("trace", "Leftmost reduction trace under a relation");
  term_inputs(trace_cmd);
  trace_cmd->add_option("--rel", rel, "Relation, e.g. full, head-v, internal-v:sigma1, head-sigma+internal-v");

  std::string file, kind = "standard";
  CLI::App* check_cmd = app.add_subcommand("check", "Check a trace file");
  check_cmd->add_option("FILE", file, "Trace file ('-' for stdin)")->required();
  check_cmd->add_option("--kind", kind, "What to check")
      ->check(CLI::IsMember({"standard", "standard-head", "strict", "inner", "trace-valid"}));

  bool dot = false;
  CLI::App* graph_cmd = app.add_subcommand("graph", "Reduction graph (--fuel caps the node count)");
  term_inputs(graph_cmd);
  graph_cmd->add_option("--rel", rel, "Relation");
  graph_cmd->add_flag("--dot", dot, "Graphviz output");

  AnalyzeOptions an;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Semi-decide halting, valuability, solvability");
  term_inputs(analyze_cmd);
  analyze_cmd->add_option("--query", an.query, "Query")
      ->check(CLI::IsMember({"halts", "head-v", "pv", "solvable", "pv-oracle", "solv-oracle", "obs-equiv"}));
  analyze_cmd->add_option("--with", an.with, "Second term for obs-equiv");
  analyze_cmd->add_option("--val-size", an.val_size, "Oracle: closed value size bound");
  analyze_cmd->add_option("--arg-count", an.arg_count, "Oracle: argument count bound");
  analyze_cmd->add_option("--arg-size", an.arg_size, "Oracle: argument size bound");
  analyze_cmd->add_option("--contexts", an.contexts, "obs-equiv: contexts to try");
  analyze_cmd->add_option("--context-size", an.context_size, "obs-equiv: context size bound");

  FuzzOptions fz;
  CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "Run the property catalog");
  fuzz_cmd->add_flag("--all", fz.all, "Every property");
  fuzz_cmd->add_option("--property", fz.properties, "Property id (repeatable)");
  fuzz_cmd->add_flag("--list", fz.list, "List property ids");
  fuzz_cmd->add_option("--max-size", fz.max_size, "Corpus size bound");
  fuzz_cmd->add_option("--seed", fz.seed, "Random corpus with this seed");
  fuzz_cmd->add_option("--count", fz.count, "Random corpus size");
  fuzz_cmd->add_option("--jobs", fz.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  g.fuel_given = fuel->count() > 0;

  try {
    if (*parse_cmd) return cmd_parse(g, load_terms(term_args, files));
    if (*eval_cmd) return cmd_eval(g, load_terms(term_args, files), strategy, emit_trace);
    if (*trace_cmd) return cmd_trace(g, load_terms(term_args, files), rel);
    if (*check_cmd) return cmd_check(g, file, kind);
    if (*graph_cmd) return cmd_graph(g, load_terms(term_args, files), rel, dot);
    if (*analyze_cmd) return cmd_analyze(g, load_terms(term_args, files), an);
    if (*fuzz_cmd) return cmd_fuzz(g, fz);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const GuardError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kOk;
}
