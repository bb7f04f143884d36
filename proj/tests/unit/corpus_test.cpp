#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "../support/synthetic.hpp"
#include "vvd/corpus/metadata.hpp"
#include "vvd/corpus/render.hpp"
#include "vvd/corpus/scan.hpp"
#include "vvd/corpus/tables.hpp"

using namespace vvd;
using namespace vvd::corpus;
using namespace vvd::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = VVD_FIXTURES;

class TempDir {
 public:
  TempDir() {
    static int n = 0;
    path_ = fs::temp_directory_path() /
            ("vvd_corpus_test_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  void write(const std::string& rel, const std::string& text) const {
    fs::create_directories((path_ / rel).parent_path());
    write_text_file(path_ / rel, text);
  }

 private:
  fs::path path_;
};

MetadataIndex index(std::vector<AppMetadata> ms) { return index_metadata(ms); }

const CategoryRow& row_for(const std::vector<CategoryRow>& rows, const std::string& cat) {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.category == cat; });
  if (it == rows.end()) throw std::runtime_error("no row " + cat);
  return *it;
}

const OverlapRow& row_for(const std::vector<OverlapRow>& rows, ValueCategory v, ApiFamily a) {
  return *std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.value == v && r.api == a; });
}

const EvalMetrics& row_for(const std::vector<EvalMetrics>& rows, DetectorId d) {
  return *std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.detector == d; });
}

}  // namespace

// ---- fixed point ----

TEST(FixedPoint, RoundsHalfUp) {
  EXPECT_EQ(scaled_percent(20, 5 * 20, 1), 200);
  EXPECT_EQ(scaled_percent(1, 8, 2), 1250);
  EXPECT_EQ(scaled_ratio(1, 8, 2), 13);   // 0.125 -> 0.13
  EXPECT_EQ(scaled_ratio(1, 3, 3), 333);
  EXPECT_EQ(scaled_ratio(2, 3, 3), 667);
  EXPECT_EQ(format_fixed(2510, 2), "25.10");
  EXPECT_EQ(format_fixed(5, 3), "0.005");
  EXPECT_EQ(format_fixed(0, 1), "0.0");
  EXPECT_EQ(format_fixed(std::nullopt, 2), "NA");
}

TEST(FixedPoint, MatchesDoubleRoundingOnRandomInputs) {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t den = std::uniform_int_distribution<std::int64_t>(1, 5000)(rng);
    std::int64_t num = std::uniform_int_distribution<std::int64_t>(0, den)(rng);
    // Exact rational comparison: scaled s satisfies s - 1/2 <= 100*num/den*100 < s + 1/2.
    std::int64_t s = scaled_percent(num, den, 2);
    EXPECT_LE((2 * s - 1) * den, 2 * 10000 * num);
    EXPECT_GT((2 * s + 1) * den, 2 * 10000 * num);
  }
}

// ---- scan ----

TEST(ScanApp, EmptyDirectoryHasNoFindings) {
  TempDir t;
  auto r = scan_app(t.path(), {}, "empty");
  EXPECT_EQ(r.app_id, "empty");
  EXPECT_EQ(r.files_scanned, 0u);
  EXPECT_EQ(r.files_failed, 0u);
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(r.verdicts.size(), 10u);
  EXPECT_FALSE(r.any_violation());
}

TEST(ScanApp, PlantedAllHasEveryVerdict) {
  auto r = scan_app(kFixtures / "apps" / "planted-all");
  EXPECT_EQ(r.app_id, "planted-all");
  EXPECT_EQ(r.findings.size(), 12u);
  for (auto d : detect::kAllDetectors) EXPECT_TRUE(r.verdict(d)) << detect::to_string(d);
  for (const auto& f : r.findings) {
    EXPECT_FALSE(fs::path(f.span.file).is_absolute()) << f.span.file;
    EXPECT_EQ(f.span.file.find('\\'), std::string::npos);
  }
  EXPECT_TRUE(std::is_sorted(r.findings.begin(), r.findings.end(), detect::finding_less));
}

TEST(ScanApp, ManifestOnlyNfcOrder) {
  TempDir t;
  t.write("AndroidManifest.xml", R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android">
  <application><activity android:name=".Main"><intent-filter>
    <action android:name="android.nfc.action.TAG_DISCOVERED"/>
    <action android:name="android.nfc.action.NDEF_DISCOVERED"/>
  </intent-filter></activity></application></manifest>
)");
  auto r = scan_app(t.path(), {}, "m");
  EXPECT_EQ(r.files_scanned, 1u);
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].detector, DetectorId::NfcIntentSelfDirection);
  EXPECT_EQ(r.findings[0].span.file, "AndroidManifest.xml");
  for (auto d : detect::kAllDetectors) EXPECT_EQ(r.verdict(d), d == DetectorId::NfcIntentSelfDirection);
}

TEST(ScanApp, MissingDirectoryThrows) {
  EXPECT_THROW(scan_app(kFixtures / "no-such-app"), IoError);
}

TEST(ScanApp, CountsFatalAndMalformedFiles) {
  TempDir t;
  t.write("src/Good.java", "class Good { void f() { } }\n");
  t.write("src/Bad.java", "class Bad { void f() { \n");
  t.write("AndroidManifest.xml", "<manifest>\n  <application>\n</manifest>\n");
  t.write("res/layout/main.xml", "<FrameLayout/>\n");
  t.write("res/layout-land/main.xml", "<FrameLayout/>\n");
  t.write("res/values/strings.xml", "<resources");  // not a layout dir
  t.write("notes.txt", "class X {");
  auto r = scan_app(t.path(), {}, "x");
  EXPECT_EQ(r.files_scanned, 3u);  // Good.java and two layouts
  EXPECT_EQ(r.files_failed, 2u);   // Bad.java and the manifest
  int fatal = 0;
  bool manifest_diag = false;
  for (const auto& d : r.diagnostics) {
    if (d.severity == java::Severity::fatal) ++fatal;
    if (d.span.file == "AndroidManifest.xml") {
      manifest_diag = true;
      EXPECT_EQ(d.span.start_line, 3);
    }
  }
  EXPECT_EQ(fatal, 2);
  EXPECT_TRUE(manifest_diag);
}

TEST(ScanCorpus, SortedAndIndependentOfJobs) {
  auto one = scan_corpus(kFixtures / "corpus12" / "apps", {}, 1);
  auto four = scan_corpus(kFixtures / "corpus12" / "apps", {}, 4);
  ASSERT_EQ(one.size(), 12u);
  EXPECT_EQ(one, four);
  for (std::size_t i = 1; i < one.size(); ++i) EXPECT_LT(one[i - 1].app_id, one[i].app_id);
}

TEST(ScanCorpus, EmptyAndMissingRoots) {
  TempDir t;
  EXPECT_TRUE(scan_corpus(t.path(), {}, 3).empty());
  EXPECT_THROW(scan_corpus(t.path() / "nope"), IoError);
}

// ---- metadata ----

TEST(Metadata, CsvRowWithAllFields) {
  auto ms = parse_metadata("app_id,category,installs,rating_stars,virus_positive\ncom.a,GAME,5000,4.2,0\n");
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].app_id, "com.a");
  EXPECT_EQ(ms[0].category, "GAME");
  EXPECT_EQ(ms[0].installs, 5000);
  EXPECT_DOUBLE_EQ(*ms[0].rating_stars, 4.2);
  EXPECT_EQ(ms[0].virus_positive, 0);
}

TEST(Metadata, EmptyInstallsIsAbsent) {
  auto ms = parse_metadata("app_id,category,installs,rating_stars,virus_positive\ncom.b,TOOLS,,3.0,2\n");
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_FALSE(ms[0].installs.has_value());
  EXPECT_EQ(ms[0].virus_positive, 2);
}

TEST(Metadata, DuplicateIdReportsLine) {
  try {
    parse_metadata("app_id,category\ncom.a,GAME\ncom.b,GAME\ncom.a,TOOLS\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field, "app_id");
    EXPECT_EQ(e.line, 4);
  }
}

TEST(Metadata, QuotesUnknownColumnsAndCase) {
  auto ms = parse_metadata(
      "title,app_id,category,installs\n\"Hello, world\",com.a,dating,10\n\"Say \"\"hi\"\"\",com.b,Game,\n");
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].category, "DATING");
  EXPECT_EQ(ms[1].category, "GAME");
  EXPECT_FALSE(ms[1].rating_stars.has_value());
}

TEST(Metadata, JsonLines) {
  auto ms = parse_metadata(
      "{\"app_id\":\"com.a\",\"category\":\"GAME\",\"installs\":100,\"rating_stars\":0,\"virus_positive\":null}\n"
      "\n{\"app_id\":\"com.b\",\"category\":\"tools\"}\n");
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].installs, 100);
  EXPECT_DOUBLE_EQ(*ms[0].rating_stars, 0.0);
  EXPECT_FALSE(ms[0].virus_positive.has_value());
  EXPECT_EQ(ms[1].category, "TOOLS");
}

TEST(Metadata, MalformedFieldsNameTheField) {
  auto field_of = [](const std::string& text) {
    try {
      parse_metadata(text);
    } catch (const SchemaError& e) {
      return e.field + "@" + std::to_string(e.line);
    }
    return std::string("none");
  };
  EXPECT_EQ(field_of("app_id,category,installs\na,B,12x\n"), "installs@2");
  EXPECT_EQ(field_of("app_id,category,rating_stars\na,B,7\n"), "rating_stars@2");
  EXPECT_EQ(field_of("app_id,category\na,B,C\n"), "row@2");
  EXPECT_EQ(field_of("app_id,installs\na,1\n"), "category@1");
  EXPECT_EQ(field_of("{\"app_id\":\"a\",\"category\":\"B\",\"installs\":-1}\n"), "installs@1");
  EXPECT_EQ(field_of("{\"app_id\":\"a\"}\n"), "category@1");
}

TEST(Truthset, ParsesAndRejectsUnknownDetectors) {
  auto t = parse_truthset(
      "{\"app_id\":\"a\",\"detector\":\"AnimationHedonism\",\"label\":true}\n"
      "{\"app_id\":\"a\",\"detector\":\"NfcAarSecurity\",\"label\":false}\n");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (TruthsetRecord{"a", DetectorId::AnimationHedonism, true}));
  try {
    parse_truthset("\n{\"app_id\":\"a\",\"detector\":\"Bogus\",\"label\":true}\n");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field, "detector");
    EXPECT_EQ(e.line, 2);
  }
  EXPECT_THROW(parse_truthset("{\"app_id\":\"a\",\"detector\":\"AnimationHedonism\",\"label\":1}"), SchemaError);
  EXPECT_THROW(parse_truthset("{\"app_id\":\"a\",\"detector\":\"AnimationHedonism\",\"label\":true}\n"
                              "{\"app_id\":\"a\",\"detector\":\"AnimationHedonism\",\"label\":false}\n"),
               SchemaError);
}

// ---- category table ----

namespace {

// `n` apps in `cat`, the first `m` violating through one AnimationHedonism finding.
void add_category(std::vector<AppScanResult>& rs, std::vector<AppMetadata>& ms, const std::string& cat, int n, int m) {
  for (int i = 0; i < n; ++i) {
    std::string id = cat + "-" + std::to_string(i);
    rs.push_back(i < m ? app_with(id, {DetectorId::AnimationHedonism}) : app_with(id, {}));
    ms.push_back(meta(id, cat));
  }
}

}  // namespace

TEST(CategoryTable, Examples) {
  std::vector<AppScanResult> rs;
  std::vector<AppMetadata> ms;
  add_category(rs, ms, "DATING", 20, 5);
  add_category(rs, ms, "TOOLS", 8, 0);
  add_category(rs, ms, "GAME", 7, 1);
  add_category(rs, ms, "SOCIAL", 17, 1);
  auto rows = category_table(rs, index(ms));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(format_fixed(row_for(rows, "DATING").rate_tenths, 1), "25.0");
  EXPECT_EQ(format_fixed(row_for(rows, "TOOLS").rate_tenths, 1), "0.0");
  EXPECT_EQ(format_fixed(row_for(rows, "GAME").rate_tenths, 1), "14.3");
  EXPECT_EQ(format_fixed(row_for(rows, "SOCIAL").rate_tenths, 1), "5.9");
  EXPECT_EQ(row_for(rows, "DATING").per_value.at(ValueCategory::Hedonism), 5);
  EXPECT_EQ(row_for(rows, "DATING").per_value.at(ValueCategory::Security), 0);
  std::vector<std::string> names;
  for (const auto& r : rows) names.push_back(r.category);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(CategoryTable, MissingMetadataIsUnknown) {
  auto rows = category_table({app_with("x", {DetectorId::TelephonySmsConformity}), app_with("y", {})},
                             index({meta("y", "GAME")}));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(row_for(rows, "UNKNOWN").app_count, 1);
  EXPECT_EQ(row_for(rows, "UNKNOWN").violating_count, 1);
  EXPECT_EQ(row_for(rows, "UNKNOWN").per_value.at(ValueCategory::Conformity), 1);
}

TEST(CategoryTable, ConservesAppsAndIgnoresOrder) {
  std::mt19937 rng(11);
  const std::vector<std::string> cats = {"A", "B", "C", "D"};
  for (int round = 0; round < 20; ++round) {
    std::vector<AppScanResult> rs;
    std::vector<AppMetadata> ms;
    int n = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int i = 0; i < n; ++i) {
      std::string id = "app" + std::to_string(i);
      std::vector<DetectorId> hits;
      for (auto d : detect::kAllDetectors)
        if (rng() % 7 == 0) hits.push_back(d);
      rs.push_back(app_with(id, hits));
      if (rng() % 5) ms.push_back(meta(id, cats[rng() % cats.size()]));
    }
    auto rows = category_table(rs, index(ms));
    std::int64_t apps = 0, violating = 0;
    for (const auto& r : rows) apps += r.app_count, violating += r.violating_count;
    EXPECT_EQ(apps, n);
    EXPECT_EQ(violating, std::count_if(rs.begin(), rs.end(), [](const auto& r) { return r.any_violation(); }));
    std::shuffle(rs.begin(), rs.end(), rng);
    EXPECT_EQ(category_table(rs, index(ms)), rows);
  }
}

// ---- overlap table ----

namespace {

// `n` apps violating (value, api), the first `k` virus-positive.
void add_overlap(std::vector<AppScanResult>& rs, std::vector<AppMetadata>& ms, ValueCategory v, ApiFamily a, int k,
                 int n) {
  const std::string prefix = std::string(detect::to_string(v)) + "/" + std::string(detect::to_string(a)) + "-";
  for (int i = 0; i < n; ++i) {
    std::string id = prefix + std::to_string(i);
    rs.push_back(app_with_pair(id, v, a));
    ms.push_back(meta(id, "GAME", i < k ? 3 : 0));
  }
}

}  // namespace

TEST(OverlapTable, Examples) {
  std::vector<AppScanResult> rs;
  std::vector<AppMetadata> ms;
  add_overlap(rs, ms, ValueCategory::Security, ApiFamily::telephony, 74, 117);
  add_overlap(rs, ms, ValueCategory::SelfDirection, ApiFamily::nfc, 2, 14);
  add_overlap(rs, ms, ValueCategory::SelfDirection, ApiFamily::media, 157, 975);
  auto rows = overlap_table(rs, index(ms));
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(format_fixed(row_for(rows, ValueCategory::Security, ApiFamily::telephony).rate_hundredths, 2), "63.25");
  EXPECT_EQ(format_fixed(row_for(rows, ValueCategory::SelfDirection, ApiFamily::nfc).rate_hundredths, 2), "14.29");
  EXPECT_EQ(format_fixed(row_for(rows, ValueCategory::SelfDirection, ApiFamily::media).rate_hundredths, 2), "16.10");
  const auto& empty = row_for(rows, ValueCategory::Hedonism, ApiFamily::animation);
  EXPECT_EQ(empty.violation_count, 0);
  EXPECT_EQ(format_fixed(empty.rate_hundredths, 2), "NA");
  EXPECT_EQ(rows[0].value, ValueCategory::SelfDirection);
  EXPECT_EQ(rows[0].api, ApiFamily::mtp);
}

TEST(OverlapTable, AbsentVirusFieldIsNegative) {
  auto rows = overlap_table({app_with_pair("a", ValueCategory::Hedonism, ApiFamily::animation),
                             app_with_pair("b", ValueCategory::Hedonism, ApiFamily::animation)},
                            index({meta("a", "GAME", 1)}));
  const auto& r = row_for(rows, ValueCategory::Hedonism, ApiFamily::animation);
  EXPECT_EQ(r.virus_and_violation_count, 1);
  EXPECT_EQ(r.violation_count, 2);
  EXPECT_EQ(format_fixed(r.rate_hundredths, 2), "50.00");
}

// ---- buckets ----

TEST(Buckets, Boundaries) {
  EXPECT_EQ(install_bucket_labels()[install_bucket(60000)], "[50000,100000)");
  EXPECT_EQ(install_bucket_labels()[install_bucket(0)], "[0,100)");
  EXPECT_EQ(install_bucket_labels()[install_bucket(99)], "[0,100)");
  EXPECT_EQ(install_bucket_labels()[install_bucket(100)], "[100,1000)");
  EXPECT_EQ(install_bucket_labels()[install_bucket(100000)], "[100000,1000000)");
  EXPECT_EQ(install_bucket_labels()[install_bucket(1000000)], ">=1000000");
  EXPECT_EQ(rating_bucket_labels()[rating_bucket(0.0)], "0");
  EXPECT_EQ(rating_bucket_labels()[rating_bucket(4.0)], "(3,4]");
  EXPECT_EQ(rating_bucket_labels()[rating_bucket(0.1)], "(0,1]");
  EXPECT_EQ(rating_bucket_labels()[rating_bucket(4.01)], "(4,5]");
  EXPECT_EQ(rating_bucket_labels()[rating_bucket(5.0)], "(4,5]");
}

TEST(Buckets, CountsConserveViolatingApps) {
  std::mt19937 rng(3);
  std::vector<AppScanResult> rs;
  std::vector<AppMetadata> ms;
  for (int i = 0; i < 200; ++i) {
    std::string id = "a" + std::to_string(i);
    auto [v, a] = kValueApiRows[rng() % kValueApiRows.size()];
    rs.push_back(app_with_pair(id, v, a));
    if (rng() % 4 == 0) continue;
    auto m = meta(id, "GAME");
    if (rng() % 3) m.installs = std::uniform_int_distribution<std::int64_t>(0, 3000000)(rng);
    if (rng() % 3) m.rating_stars = std::uniform_int_distribution<int>(0, 50)(rng) / 10.0;
    ms.push_back(m);
  }
  auto t = bucket_tables(rs, index(ms));
  auto overlap = overlap_table(rs, index(ms));
  for (std::size_t i = 0; i < kValueApiRows.size(); ++i) {
    auto total = [](const BucketRow& r) { return std::accumulate(r.counts.begin(), r.counts.end(), r.unknown); };
    EXPECT_EQ(total(t.ratings[i]), overlap[i].violation_count);
    EXPECT_EQ(total(t.installs[i]), overlap[i].violation_count);
  }
}

// ---- eval ----

TEST(Evaluate, ConfusionExamples) {
  auto c = labeled_corpus({{DetectorId::MediaAdUniversalism, {9, 2, 2, 33}}});
  auto m = row_for(evaluate(c.results, c.truthset), DetectorId::MediaAdUniversalism);
  EXPECT_EQ(format_fixed(m.accuracy_milli, 3), "0.913");
  EXPECT_EQ(format_fixed(m.recall_milli, 3), "0.818");

  c = labeled_corpus({{DetectorId::MediaPlayerNoStop, {21, 6, 5, 14}}});
  m = row_for(evaluate(c.results, c.truthset), DetectorId::MediaPlayerNoStop);
  EXPECT_EQ((std::vector<std::int64_t>{m.tp, m.fp, m.fn, m.tn}), (std::vector<std::int64_t>{21, 6, 5, 14}));
  EXPECT_EQ(format_fixed(m.accuracy_milli, 3), "0.761");
  EXPECT_EQ(format_fixed(m.recall_milli, 3), "0.808");
}

TEST(Evaluate, AllNegativeHasUndefinedRecall) {
  auto c = labeled_corpus({{DetectorId::AnimationHedonism, {0, 0, 0, 12}}});
  auto rows = evaluate(c.results, c.truthset);
  ASSERT_EQ(rows.size(), 10u);
  const auto& m = row_for(rows, DetectorId::AnimationHedonism);
  EXPECT_EQ(format_fixed(m.accuracy_milli, 3), "1.000");
  EXPECT_EQ(format_fixed(m.recall_milli, 3), "NA");
  EXPECT_EQ(format_fixed(row_for(rows, DetectorId::NfcAarSecurity).accuracy_milli, 3), "NA");
}

TEST(Evaluate, UnscannedAppIsSchemaError) {
  try {
    evaluate({app_with("a", {})}, {{"b", DetectorId::AnimationHedonism, true}});
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field, "app_id");
  }
}

TEST(Evaluate, MatchesDoubleArithmetic) {
  std::mt19937 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::pair<DetectorId, Confusion>> ms;
    int n = std::uniform_int_distribution<int>(1, 60)(rng);
    for (auto d : detect::kAllDetectors) {
      std::int64_t tp = rng() % (n + 1), fp = rng() % (n - tp + 1), fn = rng() % (n - tp - fp + 1);
      ms.push_back({d, {tp, fp, fn, n - tp - fp - fn}});
    }
    auto c = labeled_corpus(ms);
    auto rows = evaluate(c.results, c.truthset);
    for (const auto& [d, conf] : ms) {
      const auto& m = row_for(rows, d);
      EXPECT_EQ(m.tp, conf.tp);
      EXPECT_EQ(m.fp, conf.fp);
      EXPECT_EQ(m.fn, conf.fn);
      EXPECT_EQ(m.tn, conf.tn);
      EXPECT_NEAR(fixed_value(*m.accuracy_milli, 3), *m.accuracy(), 0.0005 + 1e-12);
      if (conf.tp + conf.fn) {
        EXPECT_NEAR(fixed_value(*m.recall_milli, 3), *m.recall(), 0.0005 + 1e-12);
      }
    }
  }
}

// ---- whole-table properties ----

TEST(Tables, IndependentOfResultOrder) {
  auto results = scan_corpus(kFixtures / "corpus12" / "apps");
  auto meta = index_metadata(load_metadata((kFixtures / "corpus12" / "metadata.csv").string()));
  auto truth = load_truthset((kFixtures / "corpus12" / "truthset.jsonl").string());
  auto base = compute_tables(results, meta, truth);
  std::mt19937 rng(19);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(results.begin(), results.end(), rng);
    auto t = compute_tables(results, meta, truth);
    EXPECT_EQ(t.categories, base.categories);
    EXPECT_EQ(t.overlap, base.overlap);
    EXPECT_EQ(t.buckets, base.buckets);
    EXPECT_EQ(t.eval, base.eval);
  }
}

TEST(Render, AlignedColumns) {
  EXPECT_EQ(render_aligned({{"a", "bb", "c"}, {"ccc", "d", ""}}), "a    bb  c\nccc  d\n");
}

TEST(Render, WritesAllOutputs) {
  TempDir t;
  auto results = std::vector<AppScanResult>{app_with("a", {DetectorId::AnimationHedonism})};
  auto written = write_outputs(t.path(), results, compute_tables(results, {}, {}));
  EXPECT_EQ(written.size(), 10u);
  for (const auto& f : written) EXPECT_TRUE(fs::exists(t.path() / f)) << f;
  EXPECT_TRUE(fs::exists(t.path() / "apps" / "a.json"));
  auto eval = read_text_file(t.path() / "eval_metrics.json");
  EXPECT_NE(eval.find("\"accuracy\": \"NA\""), std::string::npos);
}
