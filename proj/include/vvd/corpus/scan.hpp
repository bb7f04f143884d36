#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "vvd/android/layout.hpp"
#include "vvd/android/manifest.hpp"
#include "vvd/detect/detectors.hpp"
#include "vvd/errors.hpp"
#include "vvd/io.hpp"
#include "vvd/java/parser.hpp"
#include "vvd/report/report.hpp"

namespace vvd::corpus {

namespace fs = std::filesystem;
using report::AppScanResult;

namespace detail {

inline std::string relative_name(const fs::path& p, const fs::path& base) {
  return p.lexically_relative(base).generic_string();
}

inline bool is_layout_dir(const fs::directory_entry& e) {
  std::error_code ec;
  return e.is_directory(ec) && e.path().filename().string().starts_with("layout");
}

// Regular files under `dir` accepted by `keep`, ordered by relative path.
template <typename Pred>
std::vector<fs::path> sorted_files(const fs::path& dir, bool recursive, const fs::path& base, Pred keep) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  auto visit = [&](const fs::directory_entry& e) {
    std::error_code ec2;
    if (e.is_regular_file(ec2) && keep(e.path())) out.push_back(e.path());
  };
  if (recursive) {
    for (fs::recursive_directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec), end;
         !ec && it != end; it.increment(ec))
      visit(*it);
  } else {
    for (fs::directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec), end; !ec && it != end;
         it.increment(ec))
      visit(*it);
  }
  std::sort(out.begin(), out.end(),
            [&](const fs::path& a, const fs::path& b) { return relative_name(a, base) < relative_name(b, base); });
  return out;
}

inline java::ParseDiagnostic file_failure(const std::string& file, int line, int col, const std::string& message) {
  return {Span{file, line, col, line, col}, message, java::Severity::fatal};
}

}  // namespace detail

// Scans one app tree: every .java file (recursively, in lexicographic
// relative-path order), AndroidManifest.xml at the root, and XML files in
// res/layout*/ directories. Span paths are relative to `app_dir`. Throws
// IoError only when `app_dir` is not a directory.
inline AppScanResult scan_app(const fs::path& app_dir, const detect::DetectorConfig& cfg = {},
                              std::string app_id = {}) {
  std::error_code ec;
  if (!fs::is_directory(app_dir, ec)) throw IoError("app directory not found: " + app_dir.string());
  if (app_id.empty()) app_id = app_dir.filename().string();
  if (app_id.empty()) app_id = app_dir.parent_path().filename().string();

  detect::AppBundle bundle;
  std::vector<java::ParseDiagnostic> diagnostics;
  std::size_t scanned = 0, failed = 0;

  auto java_files = detail::sorted_files(app_dir, true, app_dir, [](const fs::path& p) { return p.extension() == ".java"; });
  for (const auto& path : java_files) {
    const auto rel = detail::relative_name(path, app_dir);
    java::ParseResult r;
    try {
      r = java::parse_file(path, rel);
    } catch (const IoError& e) {
      ++failed;
      diagnostics.push_back(detail::file_failure(rel, 1, 1, e.what()));
      continue;
    }
    diagnostics.insert(diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    if (r.ok()) {
      ++scanned;
      bundle.units.push_back(std::move(*r.unit));
    } else {
      ++failed;
    }
  }

  auto parse_xml_file = [&](const fs::path& path, auto&& parse) {
    const auto rel = detail::relative_name(path, app_dir);
    try {
      auto model = parse(read_text_file(path), rel);
      ++scanned;
      return std::optional(std::move(model));
    } catch (const XmlError& e) {
      diagnostics.push_back(detail::file_failure(rel, e.line, e.col, e.what()));
    } catch (const IoError& e) {
      diagnostics.push_back(detail::file_failure(rel, 1, 1, e.what()));
    }
    ++failed;
    return std::optional<decltype(parse(std::string_view{}, rel))>{};
  };

  const auto manifest_path = app_dir / "AndroidManifest.xml";
  if (fs::exists(manifest_path, ec)) {
    bundle.manifest = parse_xml_file(manifest_path, [](std::string_view text, const std::string& rel) {
      return android::parse_manifest(text, rel);
    });
  }

  std::vector<fs::path> layout_dirs;
  for (fs::directory_iterator it(app_dir / "res", ec), end; !ec && it != end; it.increment(ec))
    if (detail::is_layout_dir(*it)) layout_dirs.push_back(it->path());
  std::sort(layout_dirs.begin(), layout_dirs.end());
  for (const auto& dir : layout_dirs) {
    for (const auto& path :
         detail::sorted_files(dir, false, app_dir, [](const fs::path& p) { return p.extension() == ".xml"; })) {
      auto layout = parse_xml_file(path, [](std::string_view text, const std::string& rel) {
        return android::parse_layout(text, rel);
      });
      if (layout) bundle.layouts.push_back(std::move(*layout));
    }
  }

  auto findings = detect::run_all(bundle, cfg);
  return report::assemble(std::move(app_id), scanned, failed, std::move(findings), std::move(diagnostics));
}

// App directories directly under `root`, sorted by name.
inline std::vector<fs::path> list_apps(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("corpus root not found: " + root.string());
  std::vector<fs::path> apps;
  for (fs::directory_iterator it(root, ec), end; !ec && it != end; it.increment(ec)) {
    std::error_code ec2;
    if (it->is_directory(ec2)) apps.push_back(it->path());
  }
  std::sort(apps.begin(), apps.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return apps;
}

// Scans every app under `root` on up to `jobs` threads. Results come back
// in app_id order whatever the completion order. An app that cannot be
// scanned yields a result with one fatal diagnostic.
inline std::vector<AppScanResult> scan_corpus(const fs::path& root, const detect::DetectorConfig& cfg = {},
                                              unsigned jobs = 1) {
  const auto apps = list_apps(root);
  std::vector<AppScanResult> results(apps.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < apps.size();) {
      const std::string id = apps[i].filename().string();
      try {
        results[i] = scan_app(apps[i], cfg, id);
      } catch (const std::exception& e) {
        results[i] = report::assemble(id, 0, 1, {}, {detail::file_failure(id, 1, 1, e.what())});
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(apps.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace vvd::corpus
