#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shuffle {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A path that does not resolve in the term it is applied to.
class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contraction requested at a position that holds no redex of the rule.
class RedexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trace whose steps do not replay.
class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration refused because the requested size is beyond the guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two evaluation routes disagreed where the theory says they cannot.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace shuffle
