#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vvd/corpus/metadata.hpp"
#include "vvd/corpus/render.hpp"
#include "vvd/corpus/scan.hpp"
#include "vvd/corpus/tables.hpp"
#include "vvd/detect/config.hpp"
#include "vvd/errors.hpp"
#include "vvd/report/report.hpp"

namespace vvd::cli {

enum ExitCode { kClean = 0, kFindings = 1, kUsage = 2, kIo = 3 };

struct CliConfig {
  std::string subcommand;
  std::string input;
  std::string metadata;
  std::string truthset;
  std::string out_dir;
  std::string format;
  std::string config_path;
  unsigned jobs = 1;
  bool nfc_aar_pseudocode_mode = false;
};

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

// --config wins over VVD_CONFIG; neither means built-in defaults.
inline detect::DetectorConfig load_detector_config(const CliConfig& c) {
  std::string path = c.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("VVD_CONFIG"); env && *env) path = env;
  }
  detect::DetectorConfig cfg = path.empty() ? detect::DetectorConfig{} : detect::load_config(path);
  if (c.nfc_aar_pseudocode_mode) cfg.nfc_aar_pseudocode_mode = true;
  return cfg;
}

inline int cmd_scan(const CliConfig& c, std::ostream& out, std::ostream& err) {
  auto result = corpus::scan_app(c.input, load_detector_config(c));
  for (const auto& d : result.diagnostics)
    err << to_string(d.span) << ": " << java::to_string(d.severity) << ": " << d.message << "\n";
  out << (c.format == "json" ? report::to_json(result) : report::to_text(result));
  return result.findings.empty() ? kClean : kFindings;
}

inline void log_failures(const std::vector<report::AppScanResult>& results, std::ostream& err) {
  for (const auto& r : results)
    for (const auto& d : r.diagnostics)
      if (d.severity == java::Severity::fatal)
        err << r.app_id << ": " << to_string(d.span) << ": " << d.message << "\n";
}

inline int cmd_corpus(const CliConfig& c, std::ostream& out, std::ostream& err) {
  auto cfg = load_detector_config(c);
  auto meta = corpus::index_metadata(corpus::load_metadata(c.metadata));
  std::vector<corpus::TruthsetRecord> truth;
  if (!c.truthset.empty()) truth = corpus::load_truthset(c.truthset);
  auto results = corpus::scan_corpus(c.input, cfg, c.jobs);
  log_failures(results, err);
  auto tables = corpus::compute_tables(results, meta, truth);
  auto written = corpus::write_outputs(c.out_dir, results, tables);
  out << "scanned " << results.size() << " apps; wrote " << written.size() << " table files and "
      << results.size() << " app results to " << c.out_dir << "\n";
  return kClean;
}

inline int cmd_eval(const CliConfig& c, std::ostream& out, std::ostream& err) {
  auto cfg = load_detector_config(c);
  auto truth = corpus::load_truthset(c.truthset);
  auto results = corpus::scan_corpus(c.input, cfg, c.jobs);
  log_failures(results, err);
  auto metrics = corpus::evaluate(results, truth);
  out << (c.format == "json" ? corpus::eval_json(metrics) : corpus::eval_text(metrics));
  return kClean;
}

}  // namespace detail

// Runs the command line `args` (without the program name). Exit codes: 0
// success without findings, 1 scan found violations, 2 usage or input
// schema error, 3 I/O failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects potential human-values violations in decompiled Android app sources.", "vvd"};
  app.require_subcommand(1);
  CliConfig c;
  c.jobs = default_jobs();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", c.config_path, "Detector configuration JSON (falls back to $VVD_CONFIG)");
    sub->add_flag("--nfc-aar-pseudocode-mode", c.nfc_aar_pseudocode_mode,
                  "Flag apps that write NDEF messages with an application record instead of without one");
  };

  auto* scan = app.add_subcommand("scan", "Scan one app source tree");
  scan->add_option("app_dir", c.input, "App directory")->required();
  scan->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}))->default_val("text");
  add_common(scan);

  auto* corpus_cmd = app.add_subcommand("corpus", "Scan a corpus and write aggregate tables");
  corpus_cmd->add_option("root", c.input, "Corpus root with one directory per app")->required();
  corpus_cmd->add_option("--metadata", c.metadata, "App metadata (CSV with header, or JSON lines)")->required();
  corpus_cmd->add_option("--out", c.out_dir, "Output directory")->required();
  corpus_cmd->add_option("--truthset", c.truthset, "Truthset JSON lines for eval_metrics");
  corpus_cmd->add_option("--jobs", c.jobs, "Parallel scan workers")->check(CLI::PositiveNumber);
  add_common(corpus_cmd);

  auto* eval = app.add_subcommand("eval", "Score detector verdicts against a truthset");
  eval->add_option("root", c.input, "Corpus root with one directory per app")->required();
  eval->add_option("--truthset", c.truthset, "Truthset JSON lines")->required();
  eval->add_option("--jobs", c.jobs, "Parallel scan workers")->check(CLI::PositiveNumber);
  eval->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}))->default_val("text");
  add_common(eval);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kClean : kUsage;
  }

  try {
    if (scan->parsed()) return detail::cmd_scan(c, out, err);
    if (corpus_cmd->parsed()) return detail::cmd_corpus(c, out, err);
    return detail::cmd_eval(c, out, err);
  } catch (const SchemaError& e) {
    err << "vvd: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "vvd: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "vvd: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace vvd::cli
