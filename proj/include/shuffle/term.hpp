#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shuffle/ident.hpp"
#include "shuffle/path.hpp"

namespace shuffle {

/// Immutable lambda term with named binders. Nodes are shared, so copies are
/// cheap and terms can be handed to other threads freely. Size and free
/// variables are computed once, at construction.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Abs, App };

  static Term var(Ident x);
  static Term var(std::string_view x) { return var(Ident::of(x)); }
  static Term abs(Ident x, Term body);
  static Term abs(std::string_view x, Term body) { return abs(Ident::of(x), std::move(body)); }
  static Term app(Term fun, Term arg);

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_abs() const noexcept { return kind() == Kind::Abs; }
  bool is_app() const noexcept { return kind() == Kind::App; }

  /// Variable name, or binder of an abstraction.
  Ident name() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  /// Number of AST nodes.
  std::size_t size() const noexcept;
  const IdentSet& free_vars() const noexcept;

  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline const IdentSet& free_vars(const Term& t) { return t.free_vars(); }

/// Variables and abstractions.
inline bool is_value(const Term& t) { return !t.is_app(); }

/// Capture-avoiding t{v/x}; binders are renamed by appending primes.
Term substitute(const Term& t, Ident x, const Term& v);

bool alpha_eq(const Term& a, const Term& b);

/// Nameless encoding: equal strings iff the terms are alpha-equivalent.
std::string canonical_key(const Term& t);

/// Subterm addressed by `p`; throws PathError if it does not resolve.
const Term& subterm_at(const Term& t, const Path& p);
/// Grafts `s` at `p` without renaming (context-hole filling).
Term replace_at(const Term& t, const Path& p, const Term& s);

/// t = head args[0] ... args[n-1] with head a value.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine decompose_applicative(const Term& t);
Term apply_spine(Term head, const std::vector<Term>& args);

/// Path of the subterm `head args[0..count)` inside `head args[0..n)`.
Path spine_prefix_path(std::size_t n, std::size_t count);

/// Renames the binder of an abstraction (the new name must not occur free in it).
Term rename_binder(const Term& abstraction, Ident fresh);

/// Renames the binder of an abstraction (priming it) if it occurs free in `other`.
Term apart_from(const Term& abstraction, const Term& other);

/// A binder name free in neither abstraction (other than as its own binder).
Ident common_binder(const Term& a, const Term& b);
/// Opens two abstractions under common_binder and returns their bodies.
std::pair<Term, Term> open_common(const Term& a, const Term& b);

/// Insertion-ordered set of terms modulo alpha-equivalence.
class TermSet {
 public:
  /// True if the term was not present.
  bool insert(const Term& t);
  bool insert(const Term& t, const std::string& key);
  bool contains(const Term& t) const { return index_.count(canonical_key(t)) != 0; }
  bool contains_key(const std::string& key) const { return index_.count(key) != 0; }
  /// Position of an alpha-equal member, or -1.
  long find(const Term& t) const;

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Term& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<Term> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace shuffle
