#pragma once

#include <compare>
#include <string>
#include <tuple>

namespace vvd {

// Source region. Lines and columns are 1-based; columns count bytes.
// The end position is exclusive: (end_line, end_col) is the first byte
// after the region.
struct Span {
  std::string file;
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

inline std::string to_string(const Span& s) {
  return s.file + ":" + std::to_string(s.start_line) + ":" + std::to_string(s.start_col);
}

// Smallest span covering both a and b (assumes the same file).
inline Span cover(const Span& a, const Span& b) {
  Span out = a;
  if (std::tie(b.end_line, b.end_col) > std::tie(a.end_line, a.end_col)) {
    out.end_line = b.end_line;
    out.end_col = b.end_col;
  }
  if (std::tie(b.start_line, b.start_col) < std::tie(a.start_line, a.start_col)) {
    out.start_line = b.start_line;
    out.start_col = b.start_col;
  }
  return out;
}

}  // namespace vvd
