#include "shuffle/syntax.hpp"

#include <cctype>
#include <vector>

#include "shuffle/errors.hpp"

namespace shuffle {

Term identity() { return Term::abs("x", Term::var("x")); }
Term delta() { return Term::abs("x", Term::app(Term::var("x"), Term::var("x"))); }

namespace {

constexpr std::string_view kLambda = "\xCE\xBB";  // λ in UTF-8

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse_all() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_lambda() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '\\') return true;
    return text_.substr(pos_, kLambda.size()) == kLambda;
  }

  bool at_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  Term term() {
    if (at_lambda()) return abstraction();
    return application();
  }

  Term abstraction() {
    pos_ += text_[pos_] == '\\' ? 1 : kLambda.size();
    skip_space();
    Ident x = ident();
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected '.'");
    ++pos_;
    scope_.push_back(x);
    Term body = term();
    scope_.pop_back();
    return Term::abs(x, std::move(body));
  }

  Term application() {
    if (!at_atom()) fail(pos_ >= text_.size() ? "unexpected end of input" : "expected a term");
    Term t = atom();
    for (;;) {
      if (at_atom()) {
        t = Term::app(std::move(t), atom());
      } else if (at_lambda()) {
        // A trailing abstraction extends to the end, as in `x \y.y`.
        return Term::app(std::move(t), abstraction());
      } else {
        return t;
      }
    }
  }

  Term atom() {
    if (text_[pos_] == '(') {
      ++pos_;
      Term t = term();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    Ident x = ident();
    if (!bound(x)) {
      if (x.name() == "I") return identity();
      if (x.name() == "D") return delta();
    }
    return Term::var(x);
  }

  Ident ident() {
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) fail("expected identifier");
    while (pos_ < text_.size()) {
      auto c = static_cast<unsigned char>(text_[pos_]);
      if (!std::isalnum(c) && c != '\'' && c != '_') break;
      ++pos_;
    }
    return Ident::of(text_.substr(start, pos_ - start));
  }

  bool bound(Ident x) const {
    for (Ident y : scope_)
      if (y == x) return true;
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Ident> scope_;
};

class Printer {
 public:
  explicit Printer(const PrintOptions& options) : options_(options) {}

  void term(const Term& t) {
    if (options_.abbreviate && t.is_abs()) {
      if (abbreviation(t, "I", identity()) || abbreviation(t, "D", delta())) return;
    }
    switch (t.kind()) {
      case Term::Kind::Var:
        out_ += t.name().name();
        return;
      case Term::Kind::Abs:
        out_ += options_.unicode ? kLambda : "\\";
        out_ += t.name().name();
        out_ += '.';
        scope_.push_back(t.name());
        term(t.body());
        scope_.pop_back();
        return;
      case Term::Kind::App:
        if (t.fun().is_abs() && !abbreviates(t.fun())) {
          parenthesized(t.fun());
        } else {
          term(t.fun());
        }
        out_ += ' ';
        if (t.arg().is_var() || abbreviates(t.arg())) {
          term(t.arg());
        } else {
          parenthesized(t.arg());
        }
        return;
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void parenthesized(const Term& t) {
    out_ += '(';
    term(t);
    out_ += ')';
  }

  bool shadowed(std::string_view name) const {
    for (Ident y : scope_)
      if (y.name() == name) return true;
    return false;
  }

  bool abbreviates(const Term& t) const {
    if (!options_.abbreviate || !t.is_abs()) return false;
    return (!shadowed("I") && alpha_eq(t, identity())) || (!shadowed("D") && alpha_eq(t, delta()));
  }

  bool abbreviation(const Term& t, std::string_view name, const Term& expansion) {
    if (shadowed(name) || !alpha_eq(t, expansion)) return false;
    out_ += name;
    return true;
  }

  const PrintOptions& options_;
  std::string out_;
  std::vector<Ident> scope_;
};

}  // namespace

Term parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Term& t, const PrintOptions& options) {
  Printer printer(options);
  printer.term(t);
  return printer.take();
}

}  // namespace shuffle
