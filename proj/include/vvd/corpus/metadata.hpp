#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vvd/detect/types.hpp"
#include "vvd/errors.hpp"
#include "vvd/io.hpp"

namespace vvd::corpus {

struct AppMetadata {
  std::string app_id;
  std::string category;  // uppercase
  std::optional<std::int64_t> installs;
  std::optional<double> rating_stars;  // 0 means the app has no ratings
  std::optional<std::int64_t> virus_positive;

  bool operator==(const AppMetadata&) const = default;
};

using MetadataIndex = std::map<std::string, AppMetadata, std::less<>>;

inline MetadataIndex index_metadata(const std::vector<AppMetadata>& records) {
  MetadataIndex m;
  for (const auto& r : records) m.emplace(r.app_id, r);
  return m;
}

struct TruthsetRecord {
  std::string app_id;
  detect::DetectorId detector;
  bool label;

  bool operator==(const TruthsetRecord&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t at = 0;
  while (at <= text.size()) {
    auto nl = text.find('\n', at);
    auto line = text.substr(at, nl == std::string_view::npos ? std::string_view::npos : nl - at);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    at = nl + 1;
  }
  if (!lines.empty() && lines[0].starts_with("\xEF\xBB\xBF")) lines[0].remove_prefix(3);
  return lines;
}

// Comma-separated fields with optional double-quoted values ("" escapes a
// quote). Returns nullopt on an unterminated quote.
inline std::optional<std::vector<std::string>> split_csv(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) return std::nullopt;
  return out;
}

inline std::optional<std::int64_t> parse_count(std::string_view s, const char* field, int line) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 0)
    throw SchemaError(field, "expected a non-negative integer, got '" + std::string(s) + "'", line);
  return v;
}

inline std::optional<double> parse_rating(std::string_view s, int line) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !(v >= 0 && v <= 5))
    throw SchemaError("rating_stars", "expected a number in [0,5], got '" + std::string(s) + "'", line);
  return v;
}

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

using SeenIds = std::set<std::string, std::less<>>;

inline void require_id_and_category(AppMetadata& m, int line, SeenIds& seen) {
  if (m.app_id.empty()) throw SchemaError("app_id", "empty", line);
  if (!seen.insert(m.app_id).second) throw SchemaError("app_id", "duplicate app_id '" + m.app_id + "'", line);
  if (m.category.empty()) throw SchemaError("category", "empty", line);
  m.category = upper(m.category);
}

inline std::vector<AppMetadata> parse_csv_metadata(const std::vector<std::string_view>& lines) {
  std::size_t h = 0;
  while (h < lines.size() && trim(lines[h]).empty()) ++h;
  if (h == lines.size()) return {};
  auto header = split_csv(lines[h]);
  if (!header) throw SchemaError("header", "unterminated quote", static_cast<int>(h + 1));
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header->size(); ++i) col.emplace(std::string(trim((*header)[i])), i);
  for (const char* required : {"app_id", "category"})
    if (!col.count(required)) throw SchemaError(required, "missing column in header", static_cast<int>(h + 1));

  std::vector<AppMetadata> out;
  SeenIds seen;
  for (std::size_t i = h + 1; i < lines.size(); ++i) {
    const int line = static_cast<int>(i + 1);
    if (trim(lines[i]).empty()) continue;
    auto cells = split_csv(lines[i]);
    if (!cells) throw SchemaError("row", "unterminated quote", line);
    if (cells->size() != header->size())
      throw SchemaError("row", "expected " + std::to_string(header->size()) + " fields, got " +
                                   std::to_string(cells->size()), line);
    auto cell = [&](const char* name) -> std::string_view {
      auto it = col.find(name);
      return it == col.end() ? std::string_view{} : trim((*cells)[it->second]);
    };
    AppMetadata m;
    m.app_id = std::string(cell("app_id"));
    m.category = std::string(cell("category"));
    require_id_and_category(m, line, seen);
    m.installs = parse_count(cell("installs"), "installs", line);
    m.rating_stars = parse_rating(cell("rating_stars"), line);
    m.virus_positive = parse_count(cell("virus_positive"), "virus_positive", line);
    out.push_back(std::move(m));
  }
  return out;
}

inline nlohmann::json parse_json_line(std::string_view text, int line) {
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw SchemaError("record", "expected a JSON object", line);
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("record", e.what(), line);
  }
}

inline std::vector<AppMetadata> parse_jsonl_metadata(const std::vector<std::string_view>& lines) {
  std::vector<AppMetadata> out;
  SeenIds seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line = static_cast<int>(i + 1);
    if (trim(lines[i]).empty()) continue;
    auto j = parse_json_line(lines[i], line);
    auto str = [&](const char* key) {
      auto it = j.find(key);
      if (it == j.end()) throw SchemaError(key, "missing", line);
      if (!it->is_string()) throw SchemaError(key, "expected a string", line);
      return it->get<std::string>();
    };
    auto count = [&](const char* key) -> std::optional<std::int64_t> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
        throw SchemaError(key, "expected a non-negative integer", line);
      return it->get<std::int64_t>();
    };
    AppMetadata m;
    m.app_id = str("app_id");
    m.category = str("category");
    require_id_and_category(m, line, seen);
    m.installs = count("installs");
    m.virus_positive = count("virus_positive");
    if (auto it = j.find("rating_stars"); it != j.end() && !it->is_null()) {
      if (!it->is_number() || !(it->get<double>() >= 0 && it->get<double>() <= 5))
        throw SchemaError("rating_stars", "expected a number in [0,5]", line);
      m.rating_stars = it->get<double>();
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

// Parses metadata text: JSON-lines when the first non-blank character is
// '{', otherwise comma-separated with a header row. Unknown columns are
// ignored and blank optional fields are absent. Throws SchemaError with a
// 1-based line number on malformed or duplicate records.
inline std::vector<AppMetadata> parse_metadata(std::string_view text) {
  auto lines = detail::split_lines(text);
  auto first = detail::trim(text);
  if (first.starts_with("\xEF\xBB\xBF")) first.remove_prefix(3);
  return first.starts_with("{") ? detail::parse_jsonl_metadata(lines) : detail::parse_csv_metadata(lines);
}

inline std::vector<AppMetadata> load_metadata(const std::string& path) { return parse_metadata(read_text_file(path)); }

// JSON-lines {"app_id": ..., "detector": ..., "label": true|false}.
inline std::vector<TruthsetRecord> parse_truthset(std::string_view text) {
  std::vector<TruthsetRecord> out;
  std::set<std::pair<std::string, detect::DetectorId>> seen;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line = static_cast<int>(i + 1);
    if (detail::trim(lines[i]).empty()) continue;
    auto j = detail::parse_json_line(lines[i], line);
    auto get = [&](const char* key) -> const nlohmann::json& {
      auto it = j.find(key);
      if (it == j.end()) throw SchemaError(key, "missing", line);
      return *it;
    };
    const auto& id = get("app_id");
    if (!id.is_string() || id.get<std::string>().empty()) throw SchemaError("app_id", "expected a string", line);
    const auto& det = get("detector");
    if (!det.is_string()) throw SchemaError("detector", "expected a string", line);
    auto d = detect::parse_detector(det.get<std::string>());
    if (!d) throw SchemaError("detector", "unknown detector '" + det.get<std::string>() + "'", line);
    const auto& label = get("label");
    if (!label.is_boolean()) throw SchemaError("label", "expected a boolean", line);
    TruthsetRecord r{id.get<std::string>(), *d, label.get<bool>()};
    if (!seen.emplace(r.app_id, r.detector).second)
      throw SchemaError("app_id", "duplicate label for '" + r.app_id + "' / " + det.get<std::string>(), line);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<TruthsetRecord> load_truthset(const std::string& path) {
  return parse_truthset(read_text_file(path));
}

}  // namespace vvd::corpus
