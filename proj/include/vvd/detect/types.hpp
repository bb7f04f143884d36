#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "vvd/span.hpp"

namespace vvd::detect {

enum class ValueCategory {
  SelfDirection,
  Stimulation,
  Hedonism,
  Achievement,
  Power,
  Security,
  Tradition,
  Conformity,
  Benevolence,
  Universalism,
  Face,
  Humility,
};

inline constexpr std::array<ValueCategory, 12> kAllValues = {
    ValueCategory::SelfDirection, ValueCategory::Stimulation, ValueCategory::Hedonism,
    ValueCategory::Achievement,   ValueCategory::Power,       ValueCategory::Security,
    ValueCategory::Tradition,     ValueCategory::Conformity,  ValueCategory::Benevolence,
    ValueCategory::Universalism,  ValueCategory::Face,        ValueCategory::Humility,
};

inline std::string_view to_string(ValueCategory v) {
  switch (v) {
    case ValueCategory::SelfDirection: return "SelfDirection";
    case ValueCategory::Stimulation: return "Stimulation";
    case ValueCategory::Hedonism: return "Hedonism";
    case ValueCategory::Achievement: return "Achievement";
    case ValueCategory::Power: return "Power";
    case ValueCategory::Security: return "Security";
    case ValueCategory::Tradition: return "Tradition";
    case ValueCategory::Conformity: return "Conformity";
    case ValueCategory::Benevolence: return "Benevolence";
    case ValueCategory::Universalism: return "Universalism";
    case ValueCategory::Face: return "Face";
    case ValueCategory::Humility: return "Humility";
  }
  return "?";
}

enum class ApiFamily { animation, media, mtp, nfc, telephony, hardware };

inline constexpr std::array<ApiFamily, 6> kAllApis = {ApiFamily::animation, ApiFamily::media,     ApiFamily::mtp,
                                                      ApiFamily::nfc,       ApiFamily::telephony, ApiFamily::hardware};

inline std::string_view to_string(ApiFamily a) {
  switch (a) {
    case ApiFamily::animation: return "animation";
    case ApiFamily::media: return "media";
    case ApiFamily::mtp: return "mtp";
    case ApiFamily::nfc: return "nfc";
    case ApiFamily::telephony: return "telephony";
    case ApiFamily::hardware: return "hardware";
  }
  return "?";
}

enum class DetectorId {
  AnimationHedonism,
  MediaAdUniversalism,
  MediaAdSelfDirection,
  MediaPlayerNoStop,
  MtpSelfDirection,
  NfcIntentSelfDirection,
  NfcAarSecurity,
  TelephonySmsSecurity,
  TelephonySmsConformity,
  HardwareCameraSecurity,
};

inline constexpr std::array<DetectorId, 10> kAllDetectors = {
    DetectorId::AnimationHedonism,      DetectorId::MediaAdUniversalism, DetectorId::MediaAdSelfDirection,
    DetectorId::MediaPlayerNoStop,      DetectorId::MtpSelfDirection,    DetectorId::NfcIntentSelfDirection,
    DetectorId::NfcAarSecurity,         DetectorId::TelephonySmsSecurity, DetectorId::TelephonySmsConformity,
    DetectorId::HardwareCameraSecurity,
};

inline std::string_view to_string(DetectorId d) {
  switch (d) {
    case DetectorId::AnimationHedonism: return "AnimationHedonism";
    case DetectorId::MediaAdUniversalism: return "MediaAdUniversalism";
    case DetectorId::MediaAdSelfDirection: return "MediaAdSelfDirection";
    case DetectorId::MediaPlayerNoStop: return "MediaPlayerNoStop";
    case DetectorId::MtpSelfDirection: return "MtpSelfDirection";
    case DetectorId::NfcIntentSelfDirection: return "NfcIntentSelfDirection";
    case DetectorId::NfcAarSecurity: return "NfcAarSecurity";
    case DetectorId::TelephonySmsSecurity: return "TelephonySmsSecurity";
    case DetectorId::TelephonySmsConformity: return "TelephonySmsConformity";
    case DetectorId::HardwareCameraSecurity: return "HardwareCameraSecurity";
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const std::array<E, N>& all) {
  for (E e : all)
    if (to_string(e) == s) return e;
  return std::nullopt;
}

inline std::optional<DetectorId> parse_detector(std::string_view s) { return parse_enum(s, kAllDetectors); }
inline std::optional<ValueCategory> parse_value(std::string_view s) { return parse_enum(s, kAllValues); }
inline std::optional<ApiFamily> parse_api(std::string_view s) { return parse_enum(s, kAllApis); }

struct DetectorInfo {
  ApiFamily api;
  std::vector<ValueCategory> values;  // value tags this detector emits
  ValueCategory eval_value;           // the evaluation-table row it is scored against
};

inline DetectorInfo info(DetectorId d) {
  using V = ValueCategory;
  using A = ApiFamily;
  switch (d) {
    case DetectorId::AnimationHedonism: return {A::animation, {V::Hedonism}, V::Hedonism};
    case DetectorId::MediaAdUniversalism: return {A::media, {V::Universalism}, V::Universalism};
    case DetectorId::MediaAdSelfDirection: return {A::media, {V::SelfDirection}, V::SelfDirection};
    case DetectorId::MediaPlayerNoStop: return {A::media, {V::SelfDirection, V::Hedonism}, V::Hedonism};
    case DetectorId::MtpSelfDirection: return {A::mtp, {V::SelfDirection}, V::SelfDirection};
    case DetectorId::NfcIntentSelfDirection: return {A::nfc, {V::SelfDirection}, V::SelfDirection};
    case DetectorId::NfcAarSecurity: return {A::nfc, {V::Security}, V::Security};
    case DetectorId::TelephonySmsSecurity: return {A::telephony, {V::Security}, V::Security};
    case DetectorId::TelephonySmsConformity: return {A::telephony, {V::Conformity}, V::Conformity};
    case DetectorId::HardwareCameraSecurity: return {A::hardware, {V::Security}, V::Security};
  }
  return {A::media, {}, V::Security};
}

// Informational API -> value association table. Detectors do not use it;
// their tags come from info().
inline std::vector<ValueCategory> api_value_map(ApiFamily a) {
  using V = ValueCategory;
  switch (a) {
    case ApiFamily::animation: return {V::Hedonism};
    case ApiFamily::media: return {V::SelfDirection, V::Stimulation, V::Hedonism, V::Humility};
    case ApiFamily::mtp: return {V::SelfDirection};
    case ApiFamily::nfc: return {V::SelfDirection, V::Tradition};
    case ApiFamily::telephony: return {V::Face, V::Tradition};
    case ApiFamily::hardware: return {V::Face};
  }
  return {};
}

struct Finding {
  DetectorId detector;
  ApiFamily api;
  ValueCategory value;
  Span span;
  std::string evidence;

  bool operator==(const Finding&) const = default;
};

inline bool finding_less(const Finding& a, const Finding& b) {
  return std::tie(a.span, a.detector, a.value, a.evidence) < std::tie(b.span, b.detector, b.value, b.evidence);
}

}  // namespace vvd::detect
