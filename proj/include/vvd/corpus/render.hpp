#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "vvd/corpus/tables.hpp"
#include "vvd/io.hpp"
#include "vvd/report/report.hpp"

namespace vvd::corpus {

using Json = nlohmann::ordered_json;

// Left-aligned columns separated by two spaces, no trailing blanks.
inline std::string render_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line.append(width[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n"; }

inline std::string category_json(const std::vector<CategoryRow>& rows) {
  Json j{{"rows", Json::array()}};
  for (const auto& r : rows) {
    Json per = Json::object();
    for (auto v : kReportedValues) per[std::string(detect::to_string(v))] = r.per_value.at(v);
    j["rows"].push_back(Json{{"category", r.category},
                             {"app_count", r.app_count},
                             {"violating_count", r.violating_count},
                             {"rate_percent", format_fixed(r.rate_tenths, 1)},
                             {"per_value", per}});
  }
  return dump(j);
}

inline std::string category_text(const std::vector<CategoryRow>& rows) {
  std::vector<std::vector<std::string>> t{{"category", "apps", "violating", "rate%"}};
  for (auto v : kReportedValues) t[0].emplace_back(detect::to_string(v));
  for (const auto& r : rows) {
    std::vector<std::string> line{r.category, std::to_string(r.app_count), std::to_string(r.violating_count),
                                  format_fixed(r.rate_tenths, 1)};
    for (auto v : kReportedValues) line.push_back(std::to_string(r.per_value.at(v)));
    t.push_back(std::move(line));
  }
  return render_aligned(t);
}

inline std::string overlap_json(const std::vector<OverlapRow>& rows) {
  Json j{{"rows", Json::array()}};
  for (const auto& r : rows) {
    j["rows"].push_back(Json{{"value", detect::to_string(r.value)},
                             {"api", detect::to_string(r.api)},
                             {"virus_and_violation_count", r.virus_and_violation_count},
                             {"violation_count", r.violation_count},
                             {"overlap_rate_percent", format_fixed(r.rate_hundredths, 2)}});
  }
  return dump(j);
}

inline std::string overlap_text(const std::vector<OverlapRow>& rows) {
  std::vector<std::vector<std::string>> t{{"value", "api", "virus&violation", "violation", "overlap%"}};
  for (const auto& r : rows) {
    t.push_back({std::string(detect::to_string(r.value)), std::string(detect::to_string(r.api)),
                 std::to_string(r.virus_and_violation_count), std::to_string(r.violation_count),
                 format_fixed(r.rate_hundredths, 2)});
  }
  return render_aligned(t);
}

inline std::string bucket_json(const std::vector<BucketRow>& rows, const std::vector<std::string>& labels) {
  Json j{{"buckets", labels}, {"rows", Json::array()}};
  for (const auto& r : rows) {
    j["rows"].push_back(Json{{"value", detect::to_string(r.value)},
                             {"api", detect::to_string(r.api)},
                             {"counts", r.counts},
                             {"unknown", r.unknown}});
  }
  return dump(j);
}

inline std::string bucket_text(const std::vector<BucketRow>& rows, const std::vector<std::string>& labels) {
  std::vector<std::vector<std::string>> t{{"value", "api"}};
  t[0].insert(t[0].end(), labels.begin(), labels.end());
  t[0].push_back("unknown");
  for (const auto& r : rows) {
    std::vector<std::string> line{std::string(detect::to_string(r.value)), std::string(detect::to_string(r.api))};
    for (auto c : r.counts) line.push_back(std::to_string(c));
    line.push_back(std::to_string(r.unknown));
    t.push_back(std::move(line));
  }
  return render_aligned(t);
}

inline std::string eval_json(const std::vector<EvalMetrics>& rows) {
  Json j{{"rows", Json::array()}};
  for (const auto& e : rows) {
    j["rows"].push_back(Json{{"detector", detect::to_string(e.detector)},
                             {"tp", e.tp},
                             {"fp", e.fp},
                             {"fn", e.fn},
                             {"tn", e.tn},
                             {"accuracy", format_fixed(e.accuracy_milli, 3)},
                             {"recall", format_fixed(e.recall_milli, 3)}});
  }
  return dump(j);
}

inline std::string eval_text(const std::vector<EvalMetrics>& rows) {
  std::vector<std::vector<std::string>> t{{"detector", "tp", "fp", "fn", "tn", "accuracy", "recall"}};
  for (const auto& e : rows) {
    t.push_back({std::string(detect::to_string(e.detector)), std::to_string(e.tp), std::to_string(e.fp),
                 std::to_string(e.fn), std::to_string(e.tn), format_fixed(e.accuracy_milli, 3),
                 format_fixed(e.recall_milli, 3)});
  }
  return render_aligned(t);
}

struct CorpusTables {
  std::vector<CategoryRow> categories;
  std::vector<OverlapRow> overlap;
  BucketTables buckets;
  std::vector<EvalMetrics> eval;
};

inline CorpusTables compute_tables(const std::vector<AppScanResult>& results, const MetadataIndex& meta,
                                   const std::vector<TruthsetRecord>& truthset) {
  return {category_table(results, meta), overlap_table(results, meta), bucket_tables(results, meta),
          evaluate(results, truthset)};
}

// Writes <out>/apps/<app_id>.json and the five aggregate tables as .json
// and .txt. Returns the table file names written.
inline std::vector<std::string> write_outputs(const std::filesystem::path& out_dir,
                                              const std::vector<AppScanResult>& results, const CorpusTables& t) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "apps", ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
  for (const auto& r : results) write_text_file(out_dir / "apps" / (r.app_id + ".json"), report::to_json(r));

  const std::vector<std::pair<std::string, std::pair<std::string, std::string>>> files = {
      {"category_table", {category_json(t.categories), category_text(t.categories)}},
      {"overlap_table", {overlap_json(t.overlap), overlap_text(t.overlap)}},
      {"rating_buckets",
       {bucket_json(t.buckets.ratings, rating_bucket_labels()), bucket_text(t.buckets.ratings, rating_bucket_labels())}},
      {"install_buckets",
       {bucket_json(t.buckets.installs, install_bucket_labels()),
        bucket_text(t.buckets.installs, install_bucket_labels())}},
      {"eval_metrics", {eval_json(t.eval), eval_text(t.eval)}},
  };
  std::vector<std::string> written;
  for (const auto& [name, content] : files) {
    write_text_file(out_dir / (name + ".json"), content.first);
    write_text_file(out_dir / (name + ".txt"), content.second);
    written.push_back(name + ".json");
    written.push_back(name + ".txt");
  }
  return written;
}

}  // namespace vvd::corpus
