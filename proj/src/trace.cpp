#include "shuffle/trace.hpp"

#include <optional>

#include "shuffle/errors.hpp"
#include "shuffle/reduction.hpp"

namespace shuffle {

std::vector<Term> Trace::terms() const {
  std::vector<Term> out;
  out.reserve(steps.size() + 1);
  out.push_back(start);
  for (const Step& s : steps) out.push_back(s.result);
  return out;
}

void Trace::append(const Trace& suffix) {
  if (!alpha_eq(last(), suffix.start)) throw TraceError("traces do not meet");
  steps.insert(steps.end(), suffix.steps.begin(), suffix.steps.end());
}

std::string format_trace(const Trace& tr, const PrintOptions& options) {
  std::string out = "term: " + print(tr.start, options) + "\n";
  for (const Step& s : tr.steps) {
    out += "step: ";
    out += rule_name(s.rule);
    out += " @ " + s.path.to_string() + " -> " + print(s.result, options) + "\n";
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Term parse_term_field(std::string_view text, std::size_t line) {
  try {
    return parse(text);
  } catch (const SyntaxError& e) {
    throw TraceError("line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

Trace parse_trace(std::string_view text) {
  std::optional<Trace> tr;
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (line.starts_with("term:")) {
      if (tr) throw TraceError(where() + "second 'term:' line");
      tr.emplace(parse_term_field(trim(line.substr(5)), line_no));
      continue;
    }
    if (!line.starts_with("step:")) throw TraceError(where() + "expected 'term:' or 'step:'");
    if (!tr) throw TraceError(where() + "'step:' before 'term:'");
    std::string_view rest = trim(line.substr(5));
    std::size_t at = rest.find('@');
    if (at == std::string_view::npos) throw TraceError(where() + "missing '@'");
    Rule rule;
    try {
      rule = parse_rule(trim(rest.substr(0, at)));
    } catch (const std::invalid_argument& e) {
      throw TraceError(where() + e.what());
    }
    rest = rest.substr(at + 1);
    std::size_t arrow = rest.find("->");
    Path path;
    try {
      path = Path::parse(trim(rest.substr(0, arrow)));
    } catch (const PathError& e) {
      throw TraceError(where() + e.what());
    }
    if (arrow != std::string_view::npos) {
      tr->steps.push_back(Step{rule, path, parse_term_field(trim(rest.substr(arrow + 2)), line_no)});
    } else {
      try {
        tr->steps.push_back(Step{rule, path, contract(tr->last(), path, rule)});
      } catch (const RedexError& e) {
        throw TraceError(where() + e.what());
      }
    }
  }
  if (!tr) throw TraceError("empty trace");
  return std::move(*tr);
}

void validate_trace(const Trace& tr) {
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const Step& s = tr.steps[i];
    Term expected = [&] {
      try {
        return contract(tr.term_at(i), s.path, s.rule);
      } catch (const RedexError& e) {
        throw TraceError("step " + std::to_string(i + 1) + ": " + e.what());
      }
    }();
    if (!alpha_eq(expected, s.result))
      throw TraceError("step " + std::to_string(i + 1) + ": result is " + print(s.result) + " but contraction gives " +
                       print(expected));
  }
}

}  // namespace shuffle
