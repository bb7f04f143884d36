#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vvd/android/manifest.hpp"
#include "vvd/android/xml.hpp"
#include "vvd/span.hpp"

namespace vvd::android {

enum class DimUnit { dp, px, sp, match_parent, wrap_content, other };

inline std::string_view to_string(DimUnit u) {
  switch (u) {
    case DimUnit::dp: return "dp";
    case DimUnit::px: return "px";
    case DimUnit::sp: return "sp";
    case DimUnit::match_parent: return "match_parent";
    case DimUnit::wrap_content: return "wrap_content";
    case DimUnit::other: return "other";
  }
  return "other";
}

struct Dimension {
  std::optional<double> value;
  DimUnit unit = DimUnit::other;

  bool absolute() const { return value && (unit == DimUnit::dp || unit == DimUnit::px); }
};

// "1dp" -> (1, dp); "match_parent" -> (none, match_parent); resource
// references and unknown units -> (none, other).
inline Dimension parse_dimension(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text == "match_parent" || text == "fill_parent") return {std::nullopt, DimUnit::match_parent};
  if (text == "wrap_content") return {std::nullopt, DimUnit::wrap_content};

  std::size_t n = 0;
  while (n < text.size() && ((text[n] >= '0' && text[n] <= '9') || text[n] == '.')) ++n;
  if (n == 0) return {};
  std::string_view unit = text.substr(n);
  DimUnit u;
  if (unit == "dp" || unit == "dip") {
    u = DimUnit::dp;
  } else if (unit == "px") {
    u = DimUnit::px;
  } else if (unit == "sp") {
    u = DimUnit::sp;
  } else {
    return {};
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + n, v);
  if (ec != std::errc{} || ptr != text.data() + n) return {};
  return {v, u};
}

struct LayoutElement {
  std::string tag;
  std::optional<Dimension> width;
  std::optional<Dimension> height;
  Span span;
};

struct LayoutModel {
  std::string file;
  std::vector<LayoutElement> elements;  // document order
};

namespace detail {

inline void collect_layout(const XmlElement& e, const std::string& file, LayoutModel& m) {
  LayoutElement el;
  el.tag = e.tag;
  if (auto w = e.attr("layout_width")) el.width = parse_dimension(*w);
  if (auto h = e.attr("layout_height")) el.height = parse_dimension(*h);
  el.span = element_span(file, e);
  m.elements.push_back(std::move(el));
  for (const auto& c : e.children) collect_layout(c, file, m);
}

}  // namespace detail

// Captures every element with its layout_width/layout_height. Throws
// XmlError on malformed XML.
inline LayoutModel parse_layout(std::string_view xml_text, const std::string& file = {}) {
  XmlElement root = parse_xml(xml_text);
  LayoutModel m;
  m.file = file;
  detail::collect_layout(root, file, m);
  return m;
}

}  // namespace vvd::android
