#pragma once

// Builders for synthetic scan results, metadata and truthsets.

#include <string>
#include <vector>

#include "vvd/corpus/metadata.hpp"
#include "vvd/corpus/tables.hpp"
#include "vvd/detect/types.hpp"
#include "vvd/report/report.hpp"

namespace vvd::testing {

using detect::ApiFamily;
using detect::DetectorId;
using detect::Finding;
using detect::ValueCategory;
using report::AppScanResult;

// The detector that reports (value, api); every overlap-table row has one.
inline DetectorId detector_for(ValueCategory v, ApiFamily a) {
  for (auto d : detect::kAllDetectors) {
    const auto i = detect::info(d);
    if (i.api != a) continue;
    for (auto tag : i.values)
      if (tag == v) return d;
  }
  throw std::logic_error("no detector for pair");
}

// An app whose findings are one per value tag of each listed detector.
inline AppScanResult app_with(const std::string& id, const std::vector<DetectorId>& detectors) {
  std::vector<Finding> fs;
  int line = 1;
  for (auto d : detectors)
    for (auto v : detect::info(d).values)
      fs.push_back(Finding{d, detect::info(d).api, v, Span{"Main.java", line, 1, line, 2}, "synthetic"}), ++line;
  return report::assemble(id, 1, 0, fs, {});
}

// Only (value, api) findings, without the detector's other tags.
inline AppScanResult app_with_pair(const std::string& id, ValueCategory v, ApiFamily a) {
  auto d = detector_for(v, a);
  return report::assemble(id, 1, 0, {Finding{d, a, v, Span{"Main.java", 1, 1, 1, 2}, "synthetic"}}, {});
}

inline corpus::AppMetadata meta(const std::string& id, const std::string& category,
                                std::optional<std::int64_t> virus = std::nullopt) {
  corpus::AppMetadata m;
  m.app_id = id;
  m.category = category;
  m.virus_positive = virus;
  return m;
}

struct Confusion {
  std::int64_t tp, fp, fn, tn;
};

struct LabeledCorpus {
  std::vector<AppScanResult> results;
  std::vector<corpus::TruthsetRecord> truthset;
};

// N apps (N = tp+fp+fn+tn, equal for every detector). For each detector,
// app i has a verdict iff i < tp+fp, and its label is true iff i < tp or
// tp+fp <= i < tp+fp+fn.
inline LabeledCorpus labeled_corpus(const std::vector<std::pair<DetectorId, Confusion>>& matrices) {
  const std::int64_t n = matrices.front().second.tp + matrices.front().second.fp + matrices.front().second.fn +
                         matrices.front().second.tn;
  LabeledCorpus c;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::string id = "app" + std::to_string(100 + i);
    std::vector<DetectorId> hits;
    for (const auto& [d, m] : matrices) {
      if (i < m.tp + m.fp) hits.push_back(d);
      bool label = i < m.tp || (i >= m.tp + m.fp && i < m.tp + m.fp + m.fn);
      c.truthset.push_back({id, d, label});
    }
    c.results.push_back(app_with(id, hits));
  }
  return c;
}

}  // namespace vvd::testing
