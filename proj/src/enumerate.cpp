#include "shuffle/enumerate.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "shuffle/errors.hpp"
#include "shuffle/syntax.hpp"

namespace shuffle {

namespace {

// Nameless terms: bound occurrences are the identifiers "#0", "#1", ...
// (de Bruijn indices) and every binder is "#".
Ident index_ident(std::size_t i) { return Ident::of("#" + std::to_string(i)); }
const Ident kAnon = Ident::of("#");

class Shapes {
 public:
  explicit Shapes(const std::vector<Ident>& pool) : pool_(pool) {}

  const std::vector<Term>& of(std::size_t n, std::size_t depth) {
    auto key = std::make_pair(n, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Term> out;
    if (n == 1) {
      for (std::size_t i = 0; i < depth; ++i) out.push_back(Term::var(index_ident(i)));
      for (Ident x : pool_) out.push_back(Term::var(x));
    } else {
      for (const Term& b : of(n - 1, depth + 1)) out.push_back(Term::abs(kAnon, b));
      for (std::size_t a = 1; a + 1 < n; ++a) {
        const auto& fs = of(a, depth);
        const auto& as = of(n - 1 - a, depth);
        for (const Term& f : fs)
          for (const Term& x : as) out.push_back(Term::app(f, x));
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::vector<Ident> pool_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> memo_;
};

Ident binder_candidate(std::size_t i) {
  static const char* base[] = {"x", "y", "z", "u", "v", "w"};
  if (i < 6) return Ident::of(base[i]);
  return Ident::of(std::string(base[i % 6]) + std::to_string(i / 6));
}

Term name_binders(const Term& t, std::vector<Ident>& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      const std::string& s = t.name().name();
      if (s.size() > 1 && s[0] == '#') return Term::var(env[env.size() - 1 - std::stoul(s.substr(1))]);
      return t;
    }
    case Term::Kind::App: return Term::app(name_binders(t.fun(), env), name_binders(t.arg(), env));
    case Term::Kind::Abs: {
      Ident b;
      for (std::size_t i = 0;; ++i) {
        b = binder_candidate(i);
        if (!contains(t.free_vars(), b) && std::find(env.begin(), env.end(), b) == env.end()) break;
      }
      env.push_back(b);
      Term body = name_binders(t.body(), env);
      env.pop_back();
      return Term::abs(b, body);
    }
  }
  return t;
}

Term named(const Term& t) {
  std::vector<Ident> env;
  return name_binders(t, env);
}

Term random_shape(std::size_t n, std::size_t depth, const std::vector<Ident>& pool, std::mt19937_64& rng) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  std::size_t vars = pool.size() + depth;
  if (n == 1) {
    std::size_t i = pick(0, vars - 1);
    return Term::var(i < pool.size() ? pool[i] : index_ident(i - pool.size()));
  }
  bool lambda = n == 2 || pick(0, 1) == 0;
  // A binder guarantees a variable to end on.
  if (!lambda && vars == 0) lambda = true;
  if (lambda) return Term::abs(kAnon, random_shape(n - 1, depth + 1, pool, rng));
  std::size_t a = pick(1, n - 2);
  Term f = random_shape(a, depth, pool, rng);
  return Term::app(f, random_shape(n - 1 - a, depth, pool, rng));
}

std::vector<Term> sorted_closed(std::size_t max_size, bool values_only) {
  std::vector<Term> out;
  for (const Term& t : enumerate_terms(TermGen::exhaustive(max_size, {})))
    if (!values_only || t.is_abs()) out.push_back(t);
  std::stable_sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return print(a) < print(b);
  });
  return out;
}

}  // namespace

TermGen TermGen::exhaustive(std::size_t max_size, std::vector<Ident> pool) {
  TermGen g;
  g.max_size = max_size;
  g.pool = std::move(pool);
  return g;
}

TermGen TermGen::random(std::size_t max_size, std::vector<Ident> pool, std::uint64_t seed, std::size_t count) {
  TermGen g = exhaustive(max_size, std::move(pool));
  g.mode = Mode::Random;
  g.seed = seed;
  g.count = count;
  return g;
}

std::vector<Term> enumerate_terms(const TermGen& gen) {
  std::vector<Term> out;
  if (gen.mode == TermGen::Mode::Random) {
    std::mt19937_64 rng(gen.seed);
    // Closed sizes need a binder, so an empty pool starts at size 2.
    std::size_t lo = gen.pool.empty() ? 2 : 1;
    if (gen.max_size < lo) return out;
    for (std::size_t i = 0; i < gen.count; ++i) {
      std::size_t n = std::uniform_int_distribution<std::size_t>(lo, gen.max_size)(rng);
      out.push_back(named(random_shape(n, 0, gen.pool, rng)));
    }
    return out;
  }
  if (gen.max_size > kMaxExhaustiveSize)
    throw GuardError("exhaustive enumeration is capped at size " + std::to_string(kMaxExhaustiveSize));
  Shapes shapes(gen.pool);
  for (std::size_t n = 1; n <= gen.max_size; ++n)
    for (const Term& t : shapes.of(n, 0)) out.push_back(named(t));
  return out;
}

std::vector<Ident> make_pool(std::initializer_list<const char*> names) {
  std::vector<Ident> out;
  for (const char* n : names) out.push_back(Ident::of(n));
  return out;
}

std::vector<Term> closed_values(std::size_t max_size) { return sorted_closed(max_size, true); }
std::vector<Term> closed_terms(std::size_t max_size) { return sorted_closed(max_size, false); }

}  // namespace shuffle
