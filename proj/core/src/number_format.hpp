#pragma once

#include <array>
#include <charconv>
#include <string>

namespace tierselect::detail {

// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "?";
  return std::string(buf.data(), end);
}

inline std::string format_fixed(double v, int precision) {
  std::array<char, 64> buf{};
  auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, precision);
  if (ec != std::errc{}) return "?";
  return std::string(buf.data(), end);
}

}  // namespace tierselect::detail
