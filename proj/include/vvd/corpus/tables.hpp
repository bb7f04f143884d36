#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vvd/corpus/metadata.hpp"
#include "vvd/detect/types.hpp"
#include "vvd/errors.hpp"
#include "vvd/report/report.hpp"

namespace vvd::corpus {

using detect::ApiFamily;
using detect::DetectorId;
using detect::ValueCategory;
using report::AppScanResult;

// round-half-up(num / den * 10^decimals) for num, den >= 0, den > 0.
inline std::int64_t scaled_ratio(std::int64_t num, std::int64_t den, int decimals) {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  return (2 * scale * num + den) / (2 * den);
}

// round-half-up(100 * num / den) as a percent with `decimals` places.
inline std::int64_t scaled_percent(std::int64_t num, std::int64_t den, int decimals) {
  return scaled_ratio(100 * num, den, decimals);
}

// Fixed-point rendering: (2510, 2) -> "25.10"; nullopt -> "NA".
inline std::string format_fixed(std::optional<std::int64_t> scaled, int decimals) {
  if (!scaled) return "NA";
  std::string digits = std::to_string(*scaled);
  if (decimals == 0) return digits;
  if (digits.size() <= static_cast<std::size_t>(decimals))
    digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
  digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  return digits;
}

inline double fixed_value(std::int64_t scaled, int decimals) {
  double v = static_cast<double>(scaled);
  for (int i = 0; i < decimals; ++i) v /= 10;
  return v;
}

// The five values the detectors report, in table column order.
inline constexpr std::array<ValueCategory, 5> kReportedValues = {
    ValueCategory::Hedonism, ValueCategory::SelfDirection, ValueCategory::Universalism, ValueCategory::Security,
    ValueCategory::Conformity};

// (value, api) rows of the overlap and bucket tables.
inline constexpr std::array<std::pair<ValueCategory, ApiFamily>, 10> kValueApiRows = {{
    {ValueCategory::SelfDirection, ApiFamily::mtp},
    {ValueCategory::SelfDirection, ApiFamily::media},
    {ValueCategory::SelfDirection, ApiFamily::nfc},
    {ValueCategory::Security, ApiFamily::hardware},
    {ValueCategory::Security, ApiFamily::telephony},
    {ValueCategory::Security, ApiFamily::nfc},
    {ValueCategory::Hedonism, ApiFamily::media},
    {ValueCategory::Hedonism, ApiFamily::animation},
    {ValueCategory::Universalism, ApiFamily::media},
    {ValueCategory::Conformity, ApiFamily::telephony},
}};

inline const std::string kUnknownCategory = "UNKNOWN";

inline bool has_value(const AppScanResult& r, ValueCategory v) {
  return std::any_of(r.findings.begin(), r.findings.end(), [&](const auto& f) { return f.value == v; });
}

inline bool has_pair(const AppScanResult& r, ValueCategory v, ApiFamily a) {
  return std::any_of(r.findings.begin(), r.findings.end(),
                     [&](const auto& f) { return f.value == v && f.api == a; });
}

inline const AppMetadata* find_meta(const MetadataIndex& meta, const std::string& app_id) {
  auto it = meta.find(app_id);
  return it == meta.end() ? nullptr : &it->second;
}

struct CategoryRow {
  std::string category;
  std::int64_t app_count = 0;
  std::int64_t violating_count = 0;
  std::int64_t rate_tenths = 0;  // percent, one decimal
  std::map<ValueCategory, std::int64_t> per_value;

  bool operator==(const CategoryRow&) const = default;
};

// One row per category, sorted by name. Apps missing from the metadata are
// counted under UNKNOWN. An app is violating when any verdict is true; the
// per-value columns count apps with at least one finding of that value.
inline std::vector<CategoryRow> category_table(const std::vector<AppScanResult>& results, const MetadataIndex& meta) {
  std::map<std::string, CategoryRow> rows;
  for (const auto& r : results) {
    const auto* m = find_meta(meta, r.app_id);
    const std::string& cat = m ? m->category : kUnknownCategory;
    auto& row = rows[cat];
    row.category = cat;
    for (auto v : kReportedValues) row.per_value.try_emplace(v, 0);
    ++row.app_count;
    if (r.any_violation()) ++row.violating_count;
    for (auto v : kReportedValues)
      if (has_value(r, v)) ++row.per_value[v];
  }
  std::vector<CategoryRow> out;
  for (auto& [_, row] : rows) {
    row.rate_tenths = scaled_percent(row.violating_count, row.app_count, 1);
    out.push_back(std::move(row));
  }
  return out;
}

struct OverlapRow {
  ValueCategory value;
  ApiFamily api;
  std::int64_t virus_and_violation_count = 0;
  std::int64_t violation_count = 0;
  std::optional<std::int64_t> rate_hundredths;  // percent, two decimals; NA when no violations

  bool operator==(const OverlapRow&) const = default;
};

inline bool virus_positive(const AppMetadata* m) { return m && m->virus_positive && *m->virus_positive > 0; }

inline std::vector<OverlapRow> overlap_table(const std::vector<AppScanResult>& results, const MetadataIndex& meta) {
  std::vector<OverlapRow> out;
  for (auto [value, api] : kValueApiRows) {
    OverlapRow row{value, api, 0, 0, std::nullopt};
    for (const auto& r : results) {
      if (!has_pair(r, value, api)) continue;
      ++row.violation_count;
      if (virus_positive(find_meta(meta, r.app_id))) ++row.virus_and_violation_count;
    }
    if (row.violation_count > 0) row.rate_hundredths = scaled_percent(row.virus_and_violation_count, row.violation_count, 2);
    out.push_back(row);
  }
  return out;
}

inline const std::vector<std::string>& rating_bucket_labels() {
  static const std::vector<std::string> labels = {"0", "(0,1]", "(1,2]", "(2,3]", "(3,4]", "(4,5]"};
  return labels;
}

inline const std::vector<std::string>& install_bucket_labels() {
  static const std::vector<std::string> labels = {"[0,100)",        "[100,1000)",        "[1000,10000)", "[10000,50000)",
                                                  "[50000,100000)", "[100000,1000000)", ">=1000000"};
  return labels;
}

// 0 is its own bucket; the rest are left-open (a, a+1].
inline std::size_t rating_bucket(double stars) {
  if (stars <= 0) return 0;
  for (std::size_t b = 1; b < 5; ++b)
    if (stars <= static_cast<double>(b)) return b;
  return 5;
}

inline std::size_t install_bucket(std::int64_t installs) {
  static constexpr std::int64_t upper[] = {100, 1000, 10000, 50000, 100000, 1000000};
  for (std::size_t b = 0; b < 6; ++b)
    if (installs < upper[b]) return b;
  return 6;
}

struct BucketRow {
  ValueCategory value;
  ApiFamily api;
  std::vector<std::int64_t> counts;
  std::int64_t unknown = 0;  // violating apps without the metadata field

  bool operator==(const BucketRow&) const = default;
};

struct BucketTables {
  std::vector<BucketRow> ratings;
  std::vector<BucketRow> installs;

  bool operator==(const BucketTables&) const = default;
};

inline BucketTables bucket_tables(const std::vector<AppScanResult>& results, const MetadataIndex& meta) {
  BucketTables t;
  for (auto [value, api] : kValueApiRows) {
    BucketRow rating{value, api, std::vector<std::int64_t>(rating_bucket_labels().size(), 0)};
    BucketRow installs{value, api, std::vector<std::int64_t>(install_bucket_labels().size(), 0)};
    for (const auto& r : results) {
      if (!has_pair(r, value, api)) continue;
      const auto* m = find_meta(meta, r.app_id);
      if (m && m->rating_stars) {
        ++rating.counts[rating_bucket(*m->rating_stars)];
      } else {
        ++rating.unknown;
      }
      if (m && m->installs) {
        ++installs.counts[install_bucket(*m->installs)];
      } else {
        ++installs.unknown;
      }
    }
    t.ratings.push_back(std::move(rating));
    t.installs.push_back(std::move(installs));
  }
  return t;
}

struct EvalMetrics {
  DetectorId detector;
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::optional<std::int64_t> accuracy_milli;  // NA when nothing is labeled
  std::optional<std::int64_t> recall_milli;    // NA when tp + fn = 0

  std::int64_t total() const { return tp + fp + fn + tn; }
  std::optional<double> accuracy() const {
    if (!total()) return std::nullopt;
    return static_cast<double>(tp + tn) / static_cast<double>(total());
  }
  std::optional<double> recall() const {
    if (!(tp + fn)) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fn);
  }

  bool operator==(const EvalMetrics&) const = default;
};

// Per-detector confusion matrix of app verdicts against truthset labels,
// for all ten detectors. Throws SchemaError if a label names an app that
// was not scanned.
inline std::vector<EvalMetrics> evaluate(const std::vector<AppScanResult>& results,
                                         const std::vector<TruthsetRecord>& truthset) {
  std::map<std::string, const AppScanResult*, std::less<>> by_id;
  for (const auto& r : results) by_id.emplace(r.app_id, &r);
  std::map<DetectorId, EvalMetrics> m;
  for (auto d : detect::kAllDetectors) m[d].detector = d;
  for (const auto& rec : truthset) {
    auto it = by_id.find(rec.app_id);
    if (it == by_id.end()) throw SchemaError("app_id", "truthset names an app that was not scanned: " + rec.app_id);
    bool verdict = it->second->verdict(rec.detector);
    auto& e = m[rec.detector];
    if (verdict && rec.label) ++e.tp;
    if (verdict && !rec.label) ++e.fp;
    if (!verdict && rec.label) ++e.fn;
    if (!verdict && !rec.label) ++e.tn;
  }
  std::vector<EvalMetrics> out;
  for (auto d : detect::kAllDetectors) {
    auto& e = m[d];
    if (e.total()) e.accuracy_milli = scaled_ratio(e.tp + e.tn, e.total(), 3);
    if (e.tp + e.fn) e.recall_milli = scaled_ratio(e.tp, e.tp + e.fn, 3);
    out.push_back(e);
  }
  return out;
}

}  // namespace vvd::corpus
