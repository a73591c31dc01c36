#pragma once

#include <cstdint>
#include <string_view>

namespace shuffle {

/// Outcome of a bounded semi-decision.
enum class Verdict3 : std::uint8_t { Yes, No, Unknown };

inline std::string_view verdict_name(Verdict3 v) {
  switch (v) {
    case Verdict3::Yes:
      return "yes";
    case Verdict3::No:
      return "no";
    case Verdict3::Unknown:
      return "unknown";
  }
  return "?";
}

}  // namespace shuffle
