#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vvd/android/xml.hpp"
#include "vvd/span.hpp"

namespace vvd::android {

struct IntentAction {
  std::string name;
  std::size_t document_order = 0;  // 0-based, global across the manifest
  Span span;
};

struct IntentFilter {
  std::vector<IntentAction> actions;
  Span span;
};

struct Activity {
  std::string name;
  std::vector<IntentFilter> intent_filters;
  Span span;
};

struct ManifestModel {
  std::string file;
  std::vector<Activity> activities;

  // All actions in document order.
  std::vector<const IntentAction*> actions() const {
    std::vector<const IntentAction*> out;
    for (const auto& a : activities)
      for (const auto& f : a.intent_filters)
        for (const auto& act : f.actions) out.push_back(&act);
    return out;
  }
};

inline constexpr std::string_view kNdefDiscovered = "android.nfc.action.NDEF_DISCOVERED";
inline constexpr std::string_view kTechDiscovered = "android.nfc.action.TECH_DISCOVERED";
inline constexpr std::string_view kTagDiscovered = "android.nfc.action.TAG_DISCOVERED";

// Tag-dispatch priority: 0 is the highest. Non-NFC actions have no rank.
inline std::optional<int> nfc_rank(std::string_view action) {
  if (action == kNdefDiscovered) return 0;
  if (action == kTechDiscovered) return 1;
  if (action == kTagDiscovered) return 2;
  return std::nullopt;
}

namespace detail {

inline Span element_span(const std::string& file, const XmlElement& e) {
  return Span{file, e.line, e.col, e.line, e.col + 1 + static_cast<int>(e.tag.size())};
}

inline void collect_activities(const XmlElement& e, const std::string& file, ManifestModel& m, std::size_t& order) {
  const auto tag = e.local_tag();
  if (tag == "activity" || tag == "activity-alias") {
    Activity act;
    act.name = e.attr("name").value_or("");
    act.span = element_span(file, e);
    for (const auto& f : e.children) {
      if (f.local_tag() != "intent-filter") continue;
      IntentFilter filter;
      filter.span = element_span(file, f);
      for (const auto& a : f.children) {
        if (a.local_tag() != "action") continue;
        filter.actions.push_back({a.attr("name").value_or(""), order++, element_span(file, a)});
      }
      act.intent_filters.push_back(std::move(filter));
    }
    m.activities.push_back(std::move(act));
    return;
  }
  for (const auto& c : e.children) collect_activities(c, file, m, order);
}

}  // namespace detail

// Captures every activity (and activity-alias) with its intent-filter
// actions in document order. Throws XmlError on malformed XML.
inline ManifestModel parse_manifest(std::string_view xml_text, const std::string& file = "AndroidManifest.xml") {
  XmlElement root = parse_xml(xml_text);
  ManifestModel m;
  m.file = file;
  std::size_t order = 0;
  detail::collect_activities(root, file, m, order);
  return m;
}

struct NfcOrderViolation {
  IntentAction earlier;  // lower priority, declared first
  IntentAction later;    // higher priority, declared after it
};

// Every pair of ranked actions where a lower-priority action precedes a
// higher-priority one anywhere in the manifest.
inline std::vector<NfcOrderViolation> nfc_priority_violations(const ManifestModel& m) {
  std::vector<const IntentAction*> ranked;
  for (const auto* a : m.actions())
    if (nfc_rank(a->name)) ranked.push_back(a);
  std::vector<NfcOrderViolation> out;
  for (std::size_t i = 0; i < ranked.size(); ++i)
    for (std::size_t j = i + 1; j < ranked.size(); ++j)
      if (*nfc_rank(ranked[i]->name) > *nfc_rank(ranked[j]->name)) out.push_back({*ranked[i], *ranked[j]});
  return out;
}

}  // namespace vvd::android
