#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace shuffle {

/// Interned identifier. Cheap to copy and compare; the spelling lives in a
/// process-wide table that is safe to use from several threads.
class Ident {
 public:
  Ident() = default;

  static Ident of(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const noexcept { return id_; }

  friend bool operator==(Ident, Ident) = default;
  friend auto operator<=>(Ident, Ident) = default;

 private:
  explicit Ident(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

/// Sorted (by id), duplicate-free set of identifiers.
using IdentSet = std::vector<Ident>;

bool contains(const IdentSet& set, Ident x);
IdentSet set_union(const IdentSet& a, const IdentSet& b);
IdentSet set_erase(const IdentSet& a, Ident x);
/// Spellings in lexicographic order, for display.
std::vector<std::string> sorted_names(const IdentSet& set);

/// First of base', base'', ... for which `taken` is false.
Ident fresh_ident(Ident base, const std::function<bool(Ident)>& taken);

}  // namespace shuffle

template <>
struct std::hash<shuffle::Ident> {
  std::size_t operator()(shuffle::Ident x) const noexcept { return x.id(); }
};
