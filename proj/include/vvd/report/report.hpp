#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vvd/detect/types.hpp"
#include "vvd/errors.hpp"
#include "vvd/java/ast.hpp"

namespace vvd::report {

using detect::DetectorId;
using detect::Finding;
using java::ParseDiagnostic;

inline constexpr int kSchemaVersion = 1;

struct AppScanResult {
  std::string app_id;
  std::size_t files_scanned = 0;  // parsed, possibly with recovered diagnostics
  std::size_t files_failed = 0;   // unreadable or fatally unparseable
  std::vector<Finding> findings;
  std::map<DetectorId, bool> verdicts;  // always holds all ten detectors
  std::vector<ParseDiagnostic> diagnostics;

  bool operator==(const AppScanResult&) const = default;

  bool verdict(DetectorId d) const {
    auto it = verdicts.find(d);
    return it != verdicts.end() && it->second;
  }
  bool any_violation() const {
    return std::any_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
  }
};

inline std::map<DetectorId, bool> project_verdicts(const std::vector<Finding>& findings) {
  std::map<DetectorId, bool> v;
  for (auto d : detect::kAllDetectors) v[d] = false;
  for (const auto& f : findings) v[f.detector] = true;
  return v;
}

inline AppScanResult assemble(std::string app_id, std::size_t files_scanned, std::size_t files_failed,
                              std::vector<Finding> findings, std::vector<ParseDiagnostic> diagnostics) {
  AppScanResult r;
  r.app_id = std::move(app_id);
  r.files_scanned = files_scanned;
  r.files_failed = files_failed;
  r.verdicts = project_verdicts(findings);
  r.findings = std::move(findings);
  r.diagnostics = std::move(diagnostics);
  return r;
}

using Json = nlohmann::ordered_json;

inline Json span_json(const Span& s) {
  return Json{{"file", s.file},
              {"start_line", s.start_line},
              {"start_col", s.start_col},
              {"end_line", s.end_line},
              {"end_col", s.end_col}};
}

inline Json to_json_value(const AppScanResult& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["app_id"] = r.app_id;
  j["files_scanned"] = r.files_scanned;
  j["files_failed"] = r.files_failed;
  j["findings"] = Json::array();
  for (const auto& f : r.findings) {
    j["findings"].push_back(Json{{"detector", detect::to_string(f.detector)},
                                 {"api", detect::to_string(f.api)},
                                 {"value", detect::to_string(f.value)},
                                 {"span", span_json(f.span)},
                                 {"evidence", f.evidence}});
  }
  Json verdicts = Json::object();
  for (auto d : detect::kAllDetectors) verdicts[std::string(detect::to_string(d))] = r.verdict(d);
  j["verdicts"] = verdicts;
  j["diagnostics"] = Json::array();
  for (const auto& d : r.diagnostics) {
    j["diagnostics"].push_back(
        Json{{"span", span_json(d.span)}, {"severity", java::to_string(d.severity)}, {"message", d.message}});
  }
  return j;
}

// Invalid UTF-8 (e.g. from file names) is replaced with U+FFFD.
inline std::string to_json(const AppScanResult& r) {
  return to_json_value(r).dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

namespace detail {

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path.empty() ? "result" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::string get_string(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_string()) throw SchemaError(path.empty() ? key : path + "." + key, "expected a string");
  return v.get<std::string>();
}

inline std::int64_t get_int(const Json& obj, const std::string& key, const std::string& path, std::int64_t min) {
  const Json& v = field(obj, key, path);
  const auto name = path.empty() ? key : path + "." + key;
  if (!v.is_number_integer()) throw SchemaError(name, "expected an integer");
  auto n = v.get<std::int64_t>();
  if (n < min) throw SchemaError(name, "out of range");
  return n;
}

inline const Json& get_array(const Json& obj, const std::string& key) {
  const Json& v = field(obj, key, "");
  if (!v.is_array()) throw SchemaError(key, "expected an array");
  return v;
}

inline Span get_span(const Json& obj, const std::string& path) {
  const std::string p = path + ".span";
  const Json& s = field(obj, "span", path);
  return Span{get_string(s, "file", p), static_cast<int>(get_int(s, "start_line", p, 0)),
              static_cast<int>(get_int(s, "start_col", p, 0)), static_cast<int>(get_int(s, "end_line", p, 0)),
              static_cast<int>(get_int(s, "end_col", p, 0))};
}

template <typename E>
E get_enum(const Json& obj, const std::string& key, const std::string& path, std::optional<E> (*parse)(std::string_view)) {
  auto text = get_string(obj, key, path);
  auto e = parse(text);
  if (!e) throw SchemaError(path + "." + key, "unknown name '" + text + "'");
  return *e;
}

}  // namespace detail

// Inverse of to_json. Throws SchemaError naming the first offending field.
inline AppScanResult from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("result", e.what());
  }
  if (!j.is_object()) throw SchemaError("result", "expected an object");

  if (detail::get_int(j, "schema_version", "", 0) != kSchemaVersion)
    throw SchemaError("schema_version", "unsupported version");
  AppScanResult r;
  r.app_id = detail::get_string(j, "app_id", "");
  r.files_scanned = static_cast<std::size_t>(detail::get_int(j, "files_scanned", "", 0));
  r.files_failed = static_cast<std::size_t>(detail::get_int(j, "files_failed", "", 0));

  const Json& findings = detail::get_array(j, "findings");
  for (std::size_t i = 0; i < findings.size(); ++i) {
    const std::string p = "findings[" + std::to_string(i) + "]";
    const Json& f = findings[i];
    Finding out{detail::get_enum<DetectorId>(f, "detector", p, &detect::parse_detector),
                detail::get_enum<detect::ApiFamily>(f, "api", p, &detect::parse_api),
                detail::get_enum<detect::ValueCategory>(f, "value", p, &detect::parse_value),
                detail::get_span(f, p), detail::get_string(f, "evidence", p)};
    r.findings.push_back(std::move(out));
  }

  const Json& verdicts = detail::field(j, "verdicts", "");
  if (!verdicts.is_object()) throw SchemaError("verdicts", "expected an object");
  for (const auto& [key, v] : verdicts.items()) {
    auto d = detect::parse_detector(key);
    if (!d) throw SchemaError("verdicts." + key, "unknown detector");
    if (!v.is_boolean()) throw SchemaError("verdicts." + key, "expected a boolean");
    r.verdicts[*d] = v.get<bool>();
  }
  for (auto d : detect::kAllDetectors)
    if (!r.verdicts.count(d)) throw SchemaError("verdicts." + std::string(detect::to_string(d)), "missing");

  const Json& diags = detail::get_array(j, "diagnostics");
  for (std::size_t i = 0; i < diags.size(); ++i) {
    const std::string p = "diagnostics[" + std::to_string(i) + "]";
    auto sev = detail::get_string(diags[i], "severity", p);
    if (sev != "fatal" && sev != "recovered") throw SchemaError(p + ".severity", "unknown severity '" + sev + "'");
    r.diagnostics.push_back(ParseDiagnostic{detail::get_span(diags[i], p), detail::get_string(diags[i], "message", p),
                                            sev == "fatal" ? java::Severity::fatal : java::Severity::recovered});
  }
  return r;
}

inline std::string to_text(const AppScanResult& r) {
  std::ostringstream out;
  out << "app: " << r.app_id << "\n";
  out << "files: " << r.files_scanned << " scanned, " << r.files_failed << " failed\n";
  out << "findings: " << r.findings.size() << "\n";
  for (const auto& f : r.findings) {
    out << "  " << to_string(f.span) << "  " << detect::to_string(f.detector) << "  " << detect::to_string(f.api)
        << "/" << detect::to_string(f.value) << "  " << f.evidence << "\n";
  }
  out << "verdicts:\n";
  for (auto d : detect::kAllDetectors) {
    std::string name(detect::to_string(d));
    name.resize(24, ' ');
    out << "  " << name << (r.verdict(d) ? "true" : "false") << "\n";
  }
  if (!r.diagnostics.empty()) {
    out << "diagnostics: " << r.diagnostics.size() << "\n";
    for (const auto& d : r.diagnostics)
      out << "  " << to_string(d.span) << "  " << java::to_string(d.severity) << "  " << d.message << "\n";
  }
  return out.str();
}

}  // namespace vvd::report
