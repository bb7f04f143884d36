#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vvd/errors.hpp"
#include "vvd/io.hpp"

namespace vvd::detect {

struct DetectorConfig {
  std::vector<std::string> ad_import_prefixes = {"com.google.android.exoplayer", "com.google.android.gms.ads",
                                                 "com.google.ads.interactivemedia"};
  std::vector<std::string> media_play_members = {"start"};
  std::vector<std::string> media_stop_members = {"stop", "pause", "release"};
  std::vector<std::string> mtp_read_members = {"getObject", "importFile", "getThumbnail", "getPartialObject"};
  std::vector<std::string> mtp_write_members = {"sendObject"};
  std::vector<std::string> sms_send_members = {"sendTextMessage", "sendMultipartTextMessage", "sendDataMessage",
                                               "sendMultimediaMessage"};
  std::int64_t animation_duration_threshold_ms = 2000;  // fires when strictly greater
  double surface_size_threshold = 10;                   // fires when strictly below, dp or px
  // Flag an app when writeNdefMessage and createApplicationRecord both occur,
  // instead of when the write occurs without the record.
  bool nfc_aar_pseudocode_mode = false;
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw SchemaError(key, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw SchemaError(key, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

// Every key is optional; unknown keys and wrongly typed values are rejected.
inline DetectorConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("config", e.what());
  }
  if (!j.is_object()) throw SchemaError("config", "expected a JSON object");

  DetectorConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "ad_import_prefixes") {
      c.ad_import_prefixes = detail::string_list(v, key);
    } else if (key == "media_play_members") {
      c.media_play_members = detail::string_list(v, key);
    } else if (key == "media_stop_members") {
      c.media_stop_members = detail::string_list(v, key);
    } else if (key == "mtp_read_members") {
      c.mtp_read_members = detail::string_list(v, key);
    } else if (key == "mtp_write_members") {
      c.mtp_write_members = detail::string_list(v, key);
    } else if (key == "sms_send_members") {
      c.sms_send_members = detail::string_list(v, key);
    } else if (key == "animation_duration_threshold_ms") {
      if (!v.is_number_integer()) throw SchemaError(key, "expected an integer");
      c.animation_duration_threshold_ms = v.get<std::int64_t>();
    } else if (key == "surface_size_threshold") {
      if (!v.is_number()) throw SchemaError(key, "expected a number");
      c.surface_size_threshold = v.get<double>();
    } else if (key == "nfc_aar_pseudocode_mode") {
      if (!v.is_boolean()) throw SchemaError(key, "expected a boolean");
      c.nfc_aar_pseudocode_mode = v.get<bool>();
    } else {
      throw SchemaError(key, "unknown configuration key");
    }
  }
  return c;
}

inline DetectorConfig load_config(const std::string& path) {
  return parse_config(read_text_file(path));
}

}  // namespace vvd::detect
