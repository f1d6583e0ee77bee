#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace lawpca {

/// Shortest decimal text that parses back to exactly `value`.
inline void append_shortest(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) {
    out += "nan";
    return;
  }
  out.append(buf, ptr);
}

inline std::string format_shortest(double value) {
  std::string s;
  append_shortest(s, value);
  return s;
}

}  // namespace lawpca
