#include "shuffle/term.hpp"

#include <cassert>
#include <optional>

#include "shuffle/errors.hpp"

namespace shuffle {

struct Term::Node {
  Kind kind;
  Ident name;
  std::optional<Term> left;   // body (Abs) or fun (App)
  std::optional<Term> right;  // arg (App)
  std::size_t size;
  IdentSet free;
};

Term Term::var(Ident x) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, x, std::nullopt, std::nullopt, 1, IdentSet{x}}));
}

Term Term::abs(Ident x, Term body) {
  std::size_t size = body.size() + 1;
  IdentSet free = set_erase(body.free_vars(), x);
  return Term(std::make_shared<const Node>(Node{Kind::Abs, x, std::move(body), std::nullopt, size, std::move(free)}));
}

Term Term::app(Term fun, Term arg) {
  std::size_t size = fun.size() + arg.size() + 1;
  IdentSet free = set_union(fun.free_vars(), arg.free_vars());
  return Term(std::make_shared<const Node>(Node{Kind::App, Ident{}, std::move(fun), std::move(arg), size, std::move(free)}));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }
Ident Term::name() const {
  assert(!is_app());
  return node_->name;
}
const Term& Term::body() const {
  assert(is_abs());
  return *node_->left;
}
const Term& Term::fun() const {
  assert(is_app());
  return *node_->left;
}
const Term& Term::arg() const {
  assert(is_app());
  return *node_->right;
}
std::size_t Term::size() const noexcept { return node_->size; }
const IdentSet& Term::free_vars() const noexcept { return node_->free; }

Term substitute(const Term& t, Ident x, const Term& v) {
  if (!contains(t.free_vars(), x)) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      return v;
    case Term::Kind::App:
      return Term::app(substitute(t.fun(), x, v), substitute(t.arg(), x, v));
    case Term::Kind::Abs: {
      Ident y = t.name();
      Term body = t.body();
      if (contains(v.free_vars(), y)) {
        Ident fresh = fresh_ident(y, [&](Ident c) {
          return c == x || contains(v.free_vars(), c) || contains(body.free_vars(), c);
        });
        body = substitute(body, y, Term::var(fresh));
        y = fresh;
      }
      return Term::abs(y, substitute(body, x, v));
    }
  }
  return t;
}

namespace {

// Binder depth of x counted from the innermost binder, or -1 when free.
long lookup(const std::vector<Ident>& binders, Ident x) {
  for (std::size_t i = binders.size(); i-- > 0;)
    if (binders[i] == x) return static_cast<long>(binders.size() - 1 - i);
  return -1;
}

bool alpha_eq_in(const Term& a, const Term& b, std::vector<Ident>& ea, std::vector<Ident>& eb) {
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      long ia = lookup(ea, a.name());
      long ib = lookup(eb, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Term::Kind::App:
      return alpha_eq_in(a.fun(), b.fun(), ea, eb) && alpha_eq_in(a.arg(), b.arg(), ea, eb);
    case Term::Kind::Abs: {
      ea.push_back(a.name());
      eb.push_back(b.name());
      bool eq = alpha_eq_in(a.body(), b.body(), ea, eb);
      ea.pop_back();
      eb.pop_back();
      return eq;
    }
  }
  return false;
}

void append_number(std::string& out, std::uint32_t n) {
  do {
    auto byte = static_cast<unsigned char>(n & 0x7f);
    n >>= 7;
    if (n != 0) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (n != 0);
}

void key_in(const Term& t, std::vector<Ident>& binders, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      long index = lookup(binders, t.name());
      if (index >= 0) {
        out.push_back('b');
        append_number(out, static_cast<std::uint32_t>(index));
      } else {
        out.push_back('f');
        append_number(out, t.name().id());
      }
      return;
    }
    case Term::Kind::Abs:
      out.push_back('L');
      binders.push_back(t.name());
      key_in(t.body(), binders, out);
      binders.pop_back();
      return;
    case Term::Kind::App:
      out.push_back('A');
      key_in(t.fun(), binders, out);
      key_in(t.arg(), binders, out);
      return;
  }
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  std::vector<Ident> ea, eb;
  return alpha_eq_in(a, b, ea, eb);
}

std::string canonical_key(const Term& t) {
  std::string out;
  out.reserve(t.size() * 2);
  std::vector<Ident> binders;
  key_in(t, binders, out);
  return out;
}

const Term& subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (std::uint8_t step : p.steps()) {
    if (cur->is_app() && step <= 1) {
      cur = step == 0 ? &cur->fun() : &cur->arg();
    } else if (cur->is_abs() && step == 0) {
      cur = &cur->body();
    } else {
      throw PathError("path " + p.to_string() + " does not resolve");
    }
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const std::vector<std::uint8_t>& steps, std::size_t i, const Term& s,
                  const Path& whole) {
  if (i == steps.size()) return s;
  std::uint8_t step = steps[i];
  if (t.is_app() && step == 0) return Term::app(replace_from(t.fun(), steps, i + 1, s, whole), t.arg());
  if (t.is_app() && step == 1) return Term::app(t.fun(), replace_from(t.arg(), steps, i + 1, s, whole));
  if (t.is_abs() && step == 0) return Term::abs(t.name(), replace_from(t.body(), steps, i + 1, s, whole));
  throw PathError("path " + whole.to_string() + " does not resolve");
}

}  // namespace

Term replace_at(const Term& t, const Path& p, const Term& s) { return replace_from(t, p.steps(), 0, s, p); }

Spine decompose_applicative(const Term& t) {
  std::vector<Term> reversed;
  const Term* cur = &t;
  while (cur->is_app()) {
    reversed.push_back(cur->arg());
    cur = &cur->fun();
  }
  return Spine{*cur, std::vector<Term>(reversed.rbegin(), reversed.rend())};
}

Term apply_spine(Term head, const std::vector<Term>& args) {
  for (const Term& a : args) head = Term::app(std::move(head), a);
  return head;
}

Path spine_prefix_path(std::size_t n, std::size_t count) {
  return Path(std::vector<std::uint8_t>(n - count, 0));
}

Term rename_binder(const Term& abstraction, Ident fresh) {
  if (abstraction.name() == fresh) return abstraction;
  return Term::abs(fresh, substitute(abstraction.body(), abstraction.name(), Term::var(fresh)));
}

Term apart_from(const Term& abstraction, const Term& other) {
  if (!contains(other.free_vars(), abstraction.name())) return abstraction;
  Ident fresh = fresh_ident(abstraction.name(), [&](Ident c) {
    return contains(other.free_vars(), c) || contains(abstraction.body().free_vars(), c);
  });
  return rename_binder(abstraction, fresh);
}

Ident common_binder(const Term& a, const Term& b) {
  Ident xa = a.name();
  Ident xb = b.name();
  if (xa == xb || !contains(b.free_vars(), xa)) return xa;
  if (!contains(a.free_vars(), xb)) return xb;
  return fresh_ident(xa, [&](Ident c) { return contains(a.free_vars(), c) || contains(b.free_vars(), c); });
}

std::pair<Term, Term> open_common(const Term& a, const Term& b) {
  Ident z = common_binder(a, b);
  auto open = [z](const Term& t) { return t.name() == z ? t.body() : rename_binder(t, z).body(); };
  return {open(a), open(b)};
}

bool TermSet::insert(const Term& t) { return insert(t, canonical_key(t)); }

bool TermSet::insert(const Term& t, const std::string& key) {
  auto [it, inserted] = index_.try_emplace(key, items_.size());
  if (inserted) items_.push_back(t);
  return inserted;
}

long TermSet::find(const Term& t) const {
  auto it = index_.find(canonical_key(t));
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

}  // namespace shuffle
