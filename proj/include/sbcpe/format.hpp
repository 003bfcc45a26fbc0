#pragma once

#include <charconv>
#include <string>

namespace sbcpe {

// Shortest round-trip decimal form; the same value always prints the same
// bytes, which the CSV determinism contract relies on.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace sbcpe
