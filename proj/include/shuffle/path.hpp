#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace shuffle {

/// Position of a subterm: child indices from the root. For an application
/// 0 is the function and 1 the argument; for an abstraction 0 is the body.
class Path {
 public:
  Path() = default;
  Path(std::initializer_list<std::uint8_t> steps) : steps_(steps) {}
  explicit Path(std::vector<std::uint8_t> steps) : steps_(std::move(steps)) {}

  bool is_root() const noexcept { return steps_.empty(); }
  std::size_t depth() const noexcept { return steps_.size(); }
  const std::vector<std::uint8_t>& steps() const noexcept { return steps_; }

  Path child(std::uint8_t index) const {
    Path p = *this;
    p.steps_.push_back(index);
    return p;
  }
  Path operator+(const Path& suffix) const {
    Path p = *this;
    p.steps_.insert(p.steps_.end(), suffix.steps_.begin(), suffix.steps_.end());
    return p;
  }

  /// `e` for the root, otherwise dot-separated indices.
  std::string to_string() const;
  static Path parse(std::string_view text);

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::vector<std::uint8_t> steps_;
};

}  // namespace shuffle
