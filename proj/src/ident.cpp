#include "shuffle/ident.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace shuffle {
namespace {

class SymbolTable {
 public:
  SymbolTable() { intern(""); }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = index_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  const std::string& name(std::uint32_t id) {
    std::shared_lock lock(mutex_);
    return names_[id];
  }

 private:
  std::shared_mutex mutex_;
  std::deque<std::string> names_;  // deque: references stay valid on growth
  std::unordered_map<std::string, std::uint32_t> index_;
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

Ident Ident::of(std::string_view name) { return Ident(table().intern(name)); }

const std::string& Ident::name() const { return table().name(id_); }

bool contains(const IdentSet& set, Ident x) { return std::binary_search(set.begin(), set.end(), x); }

IdentSet set_union(const IdentSet& a, const IdentSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  IdentSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IdentSet set_erase(const IdentSet& a, Ident x) {
  auto it = std::lower_bound(a.begin(), a.end(), x);
  if (it == a.end() || *it != x) return a;
  IdentSet out;
  out.reserve(a.size() - 1);
  out.insert(out.end(), a.begin(), it);
  out.insert(out.end(), std::next(it), a.end());
  return out;
}

std::vector<std::string> sorted_names(const IdentSet& set) {
  std::vector<std::string> names;
  names.reserve(set.size());
  for (Ident x : set) names.push_back(x.name());
  std::sort(names.begin(), names.end());
  return names;
}

Ident fresh_ident(Ident base, const std::function<bool(Ident)>& taken) {
  std::string candidate = base.name();
  for (;;) {
    candidate += '\'';
    Ident x = Ident::of(candidate);
    if (!taken(x)) return x;
  }
}

}  // namespace shuffle
