#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace avcs {

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace avcs
