#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "vvd/android/layout.hpp"
#include "vvd/android/manifest.hpp"
#include "vvd/detect/config.hpp"
#include "vvd/detect/types.hpp"
#include "vvd/java/ast.hpp"
#include "vvd/query/ast_query.hpp"

namespace vvd::detect {

using java::SourceUnit;
using query::VarBinding;

namespace detail {

inline Finding make_finding(DetectorId d, ValueCategory v, const Span& span, std::string evidence) {
  return Finding{d, info(d).api, v, span, std::move(evidence)};
}

inline std::string format_number(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

inline std::string format_dimension(const android::Dimension& d) {
  return d.value ? format_number(*d.value) + std::string(android::to_string(d.unit))
                 : std::string(android::to_string(d.unit));
}

// Receiver variable name for grouping, or nullopt for static qualifiers,
// chained calls and other non-variable receivers.
inline std::optional<std::string> receiver_variable(const query::InvocationSite& s, const VarBinding& b) {
  if (!s.qualifier) return std::nullopt;
  auto r = query::resolve_qualifier(*s.qualifier, b);
  if (!r || r->is_static) return std::nullopt;
  auto dot = s.qualifier->rfind('.');
  return dot == std::string::npos ? *s.qualifier : s.qualifier->substr(dot + 1);
}

inline bool contains(const std::vector<std::string>& xs, std::string_view x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace detail

// setDuration(n) with n above the threshold, or setRepeatCount(INFINITE),
// on an Animator-typed receiver.
inline std::vector<Finding> detect_animation_hedonism(const SourceUnit& unit, const VarBinding& b,
                                                      const DetectorConfig& cfg = {}) {
  std::vector<Finding> out;
  for (const auto& site :
       query::find_invocations(unit, b, query::type_contains("Animator"), {"setDuration", "setRepeatCount"})) {
    if (site.argument_constants.size() != 1 || !site.argument_constants[0]) continue;
    const auto& c = *site.argument_constants[0];
    if (site.member == "setDuration") {
      const auto* n = std::get_if<std::int64_t>(&c);
      if (n && *n > cfg.animation_duration_threshold_ms)
        out.push_back(detail::make_finding(DetectorId::AnimationHedonism, ValueCategory::Hedonism, site.span,
                                           "setDuration(" + std::to_string(*n) + ")"));
    } else {
      const auto* e = std::get_if<java::EnumConstant>(&c);
      if (e && e->name == "INFINITE")
        out.push_back(detail::make_finding(DetectorId::AnimationHedonism, ValueCategory::Hedonism, site.span,
                                           "setRepeatCount(INFINITE)"));
    }
  }
  return out;
}

// Two findings per import under a configured ad/player package prefix.
inline std::vector<Finding> detect_media_ad_import(const SourceUnit& unit, const DetectorConfig& cfg = {}) {
  std::vector<Finding> out;
  for (const auto& child : unit.root.children) {
    if (child.kind != java::NodeKind::ImportDecl) continue;
    const std::string& path = child.as<java::ImportAttrs>()->path;
    for (const auto& prefix : cfg.ad_import_prefixes) {
      if (path == prefix || (path.size() > prefix.size() && path.starts_with(prefix) && path[prefix.size()] == '.')) {
        out.push_back(
            detail::make_finding(DetectorId::MediaAdUniversalism, ValueCategory::Universalism, child.span, path));
        out.push_back(
            detail::make_finding(DetectorId::MediaAdSelfDirection, ValueCategory::SelfDirection, child.span, path));
        break;
      }
    }
  }
  return out;
}

// Per file, a MediaPlayer variable that is played but never stopped,
// paused or released. Reported at its first play site.
inline std::vector<Finding> detect_media_player_no_stop(const std::vector<SourceUnit>& units,
                                                        const std::vector<VarBinding>& bindings,
                                                        const DetectorConfig& cfg = {}) {
  std::vector<Finding> out;
  std::vector<std::string> members = cfg.media_play_members;
  members.insert(members.end(), cfg.media_stop_members.begin(), cfg.media_stop_members.end());
  for (std::size_t i = 0; i < units.size(); ++i) {
    struct Receiver {
      std::optional<query::InvocationSite> first_play;
      bool stopped = false;
    };
    std::vector<std::string> order;
    std::map<std::string, Receiver> receivers;
    for (auto& site : query::find_invocations(units[i], bindings[i], query::type_equals("MediaPlayer"),
                                              query::MemberSet::of(members))) {
      auto var = detail::receiver_variable(site, bindings[i]);
      if (!var) continue;
      auto [it, fresh] = receivers.try_emplace(*var);
      if (fresh) order.push_back(*var);
      if (detail::contains(cfg.media_stop_members, site.member)) it->second.stopped = true;
      if (detail::contains(cfg.media_play_members, site.member) && !it->second.first_play)
        it->second.first_play = std::move(site);
    }
    for (const auto& var : order) {
      const auto& r = receivers[var];
      if (!r.first_play || r.stopped) continue;
      std::string evidence = var + "." + r.first_play->member + "() without stop";
      out.push_back(detail::make_finding(DetectorId::MediaPlayerNoStop, ValueCategory::SelfDirection,
                                         r.first_play->span, evidence));
      out.push_back(
          detail::make_finding(DetectorId::MediaPlayerNoStop, ValueCategory::Hedonism, r.first_play->span, evidence));
    }
  }
  return out;
}

// One-directional MtpDevice transfer within a file.
inline std::vector<Finding> detect_mtp_self_direction(const SourceUnit& unit, const VarBinding& b,
                                                      const DetectorConfig& cfg = {}) {
  std::vector<std::string> members = cfg.mtp_read_members;
  members.insert(members.end(), cfg.mtp_write_members.begin(), cfg.mtp_write_members.end());
  auto sites = query::find_invocations(unit, b, query::type_equals("MtpDevice"), query::MemberSet::of(members));
  bool reads = false, writes = false;
  for (const auto& s : sites) {
    reads |= detail::contains(cfg.mtp_read_members, s.member);
    writes |= detail::contains(cfg.mtp_write_members, s.member);
  }
  if (reads == writes) return {};
  const char* dir = reads ? " (read only)" : " (write only)";
  return {detail::make_finding(DetectorId::MtpSelfDirection, ValueCategory::SelfDirection, sites.front().span,
                               sites.front().member + dir)};
}

// One finding per lower-priority NFC action declared before a
// higher-priority one.
inline std::vector<Finding> detect_nfc_intent_self_direction(const android::ManifestModel& m) {
  std::vector<Finding> out;
  for (const auto& v : android::nfc_priority_violations(m)) {
    out.push_back(detail::make_finding(DetectorId::NfcIntentSelfDirection, ValueCategory::SelfDirection,
                                       v.earlier.span, v.earlier.name + " before " + v.later.name));
  }
  return out;
}

// App-wide: writeNdefMessage without any NdefRecord.createApplicationRecord.
// In pseudocode mode the app is flagged when both are present instead.
inline std::vector<Finding> detect_nfc_aar_security(const std::vector<SourceUnit>& units,
                                                    const std::vector<VarBinding>& bindings,
                                                    const DetectorConfig& cfg = {}) {
  std::optional<query::InvocationSite> first_write;
  bool has_aar = false;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!first_write) {
      auto writes = query::find_member_calls(units[i], bindings[i], {"writeNdefMessage"});
      if (!writes.empty()) first_write = writes.front();
    }
    if (!has_aar)
      has_aar = !query::find_invocations(units[i], bindings[i], query::type_equals("NdefRecord"),
                                         {"createApplicationRecord"})
                     .empty();
  }
  if (!first_write || has_aar != cfg.nfc_aar_pseudocode_mode) return {};
  return {detail::make_finding(
      DetectorId::NfcAarSecurity, ValueCategory::Security, first_write->span,
      has_aar ? "writeNdefMessage with createApplicationRecord" : "writeNdefMessage without createApplicationRecord")};
}

// Two findings per SMS send call on an SmsManager receiver.
inline std::vector<Finding> detect_telephony_sms(const SourceUnit& unit, const VarBinding& b,
                                                 const DetectorConfig& cfg = {}) {
  std::vector<Finding> out;
  for (const auto& site : query::find_invocations(unit, b, query::type_equals("SmsManager"),
                                                  query::MemberSet::of(cfg.sms_send_members))) {
    out.push_back(
        detail::make_finding(DetectorId::TelephonySmsSecurity, ValueCategory::Security, site.span, site.member));
    out.push_back(
        detail::make_finding(DetectorId::TelephonySmsConformity, ValueCategory::Conformity, site.span, site.member));
  }
  return out;
}

// Camera.takePicture, CameraDevice.createCaptureSession, and camera
// preview surfaces smaller than the threshold in both dimensions.
inline std::vector<Finding> detect_hardware_camera(const std::vector<SourceUnit>& units,
                                                   const std::vector<VarBinding>& bindings,
                                                   const std::vector<android::LayoutModel>& layouts,
                                                   const DetectorConfig& cfg = {}) {
  std::vector<Finding> out;
  auto emit = [&](const Span& s, std::string evidence) {
    out.push_back(
        detail::make_finding(DetectorId::HardwareCameraSecurity, ValueCategory::Security, s, std::move(evidence)));
  };
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (const auto& s : query::find_invocations(units[i], bindings[i], query::type_equals("Camera"), {"takePicture"}))
      emit(s.span, s.member);
    for (const auto& s :
         query::find_invocations(units[i], bindings[i], query::type_equals("CameraDevice"), {"createCaptureSession"}))
      emit(s.span, s.member);
  }
  auto small = [&](const std::optional<android::Dimension>& d) {
    return d && d->absolute() && *d->value < cfg.surface_size_threshold;
  };
  for (const auto& layout : layouts) {
    for (const auto& e : layout.elements) {
      bool surface = e.tag.find("SurfaceView") != std::string::npos || e.tag.find("TextureView") != std::string::npos;
      if (surface && small(e.width) && small(e.height))
        emit(e.span, e.tag + " " + detail::format_dimension(*e.width) + " x " + detail::format_dimension(*e.height));
    }
  }
  return out;
}

// Parsed artifacts of one app. `units` holds only files without fatal
// diagnostics, in scan order.
struct AppBundle {
  std::vector<SourceUnit> units;
  std::optional<android::ManifestModel> manifest;
  std::vector<android::LayoutModel> layouts;
};

inline std::vector<Finding> run_all(const AppBundle& app, const DetectorConfig& cfg = {}) {
  std::vector<VarBinding> bindings;
  bindings.reserve(app.units.size());
  for (const auto& u : app.units) bindings.push_back(query::bind_variables(u));

  std::vector<Finding> out;
  auto add = [&](std::vector<Finding> fs) { out.insert(out.end(), fs.begin(), fs.end()); };
  for (std::size_t i = 0; i < app.units.size(); ++i) {
    add(detect_animation_hedonism(app.units[i], bindings[i], cfg));
    add(detect_media_ad_import(app.units[i], cfg));
    add(detect_mtp_self_direction(app.units[i], bindings[i], cfg));
    add(detect_telephony_sms(app.units[i], bindings[i], cfg));
  }
  add(detect_media_player_no_stop(app.units, bindings, cfg));
  if (app.manifest) add(detect_nfc_intent_self_direction(*app.manifest));
  add(detect_nfc_aar_security(app.units, bindings, cfg));
  add(detect_hardware_camera(app.units, bindings, app.layouts, cfg));
  std::sort(out.begin(), out.end(), finding_less);
  return out;
}

}  // namespace vvd::detect
