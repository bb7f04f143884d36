#pragma once

#include <stdexcept>
#include <string>

#include "vvd/span.hpp"

namespace vvd {

// Missing or unreadable input file or directory.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Unterminated literal/comment or a byte that cannot start any token.
class LexError : public std::runtime_error {
 public:
  LexError(Span where, const std::string& message)
      : std::runtime_error(to_string(where) + ": " + message), span(std::move(where)), message(message) {}

  Span span;
  std::string message;
};

// Malformed XML; line/col are 1-based positions reported by the XML reader.
class XmlError : public std::runtime_error {
 public:
  XmlError(int line, int col, const std::string& message)
      : std::runtime_error("xml:" + std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line(line), col(col) {}

  int line;
  int col;
};

// A structured input (JSON result, metadata, truthset, config) violates its schema.
// `field` names the offending field; `line` is 0 when not line-oriented.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(std::string field, const std::string& detail = {}, int line = 0)
      : std::runtime_error(format(field, detail, line)), field(std::move(field)), line(line) {}

  std::string field;
  int line;

 private:
  static std::string format(const std::string& field, const std::string& detail, int line) {
    std::string s;
    if (line > 0) s += "line " + std::to_string(line) + ": ";
    s += "schema error in '" + field + "'";
    if (!detail.empty()) s += ": " + detail;
    return s;
  }
};

}  // namespace vvd
