#include "shuffle/path.hpp"

#include <charconv>

#include "shuffle/errors.hpp"

namespace shuffle {

std::string Path::to_string() const {
  if (steps_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i != 0) out.push_back('.');
    out += std::to_string(steps_[i]);
  }
  return out;
}

Path Path::parse(std::string_view text) {
  if (text == "e" || text == "ε") return Path{};
  std::vector<std::uint8_t> steps;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = text.find('.', start);
    std::string_view part = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value > 1)
      throw PathError("malformed path '" + std::string(text) + "'");
    steps.push_back(static_cast<std::uint8_t>(value));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return Path(std::move(steps));
}

}  // namespace shuffle
