#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "vvd/cli/cli.hpp"

using namespace vvd;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = VVD_FIXTURES;

struct Run {
  int code;
  std::string out, err;
};

Run vvd_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& rel) { return (kFixtures / rel).string(); }

fs::path temp_dir(const std::string& tag) {
  auto p = fs::temp_directory_path() / ("vvd_cli_test_" + std::to_string(::getpid()) + "_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

class EnvGuard {
 public:
  explicit EnvGuard(const std::string& value) { ::setenv("VVD_CONFIG", value.c_str(), 1); }
  ~EnvGuard() { ::unsetenv("VVD_CONFIG"); }
};

}  // namespace

TEST(Cli, ScanCleanExitsZero) {
  auto r = vvd_run({"scan", fixture("apps/clean")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("clean"), std::string::npos);
}

TEST(Cli, ScanFindingsExitsOneAndEmitsJson) {
  auto r = vvd_run({"scan", fixture("apps/planted-all"), "--format", "json"});
  EXPECT_EQ(r.code, 1) << r.err;
  auto back = report::from_json(r.out);
  EXPECT_EQ(back.findings.size(), 12u);
  EXPECT_EQ(back.app_id, "planted-all");
}

TEST(Cli, MissingAppDirExitsThree) {
  auto r = vvd_run({"scan", fixture("apps/does-not-exist")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("not found"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(vvd_run({}).code, 2);
  EXPECT_EQ(vvd_run({"frobnicate"}).code, 2);
  EXPECT_EQ(vvd_run({"scan"}).code, 2);
  EXPECT_EQ(vvd_run({"scan", fixture("apps/clean"), "--format", "xml"}).code, 2);
  EXPECT_EQ(vvd_run({"corpus", fixture("corpus12"), "--out", "x"}).code, 2);
  EXPECT_EQ(vvd_run({"corpus", fixture("corpus12"), "--metadata", "m", "--out", "x", "--jobs", "0"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  auto r = vvd_run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("scan"), std::string::npos);
}

TEST(Cli, UnknownDetectorInTruthsetExitsTwo) {
  auto dir = temp_dir("truth");
  write_text_file(dir / "t.jsonl", "{\"app_id\":\"a01\",\"detector\":\"NoSuchDetector\",\"label\":true}\n");
  auto r = vvd_run({"eval", fixture("corpus12/apps"), "--truthset", (dir / "t.jsonl").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("detector"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, EvalPrintsTable) {
  auto r = vvd_run({"eval", fixture("corpus12/apps"), "--truthset", fixture("corpus12/truthset.jsonl")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, read_text_file(kFixtures / "corpus12" / "golden" / "eval_metrics.txt"));
}

TEST(Cli, CorpusOnEmptyRootWritesEmptyTables) {
  auto dir = temp_dir("empty");
  fs::create_directories(dir / "root");
  write_text_file(dir / "meta.csv", "app_id,category\n");
  auto r = vvd_run({"corpus", (dir / "root").string(), "--metadata", (dir / "meta.csv").string(), "--out",
                    (dir / "out").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "category_table.json"));
  EXPECT_TRUE(fs::is_empty(dir / "out" / "apps"));
  fs::remove_all(dir);
}

TEST(Cli, MissingMetadataExitsThree) {
  auto r = vvd_run({"corpus", fixture("corpus12"), "--metadata", fixture("nope.csv"), "--out", "/tmp/unused"});
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, ConfigFromEnvironmentAndFlag) {
  auto dir = temp_dir("cfg");
  write_text_file(dir / "lenient.json", "{\"animation_duration_threshold_ms\": 1000000000}\n");
  write_text_file(dir / "bad.json", "{\"no_such_key\": 1}\n");
  const auto app = fixture("detectors/animation_hedonism_positive");

  EXPECT_EQ(vvd_run({"scan", app}).code, 1);
  {
    EnvGuard env((dir / "lenient.json").string());
    EXPECT_EQ(vvd_run({"scan", app}).code, 0);
    // --config takes precedence over the environment.
    auto r = vvd_run({"scan", app, "--config", (dir / "bad.json").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("no_such_key"), std::string::npos);
  }
  {
    EnvGuard env((dir / "missing.json").string());
    EXPECT_EQ(vvd_run({"scan", app}).code, 3);
  }
  fs::remove_all(dir);
}
