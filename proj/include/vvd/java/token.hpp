#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "vvd/span.hpp"

namespace vvd::java {

enum class TokenKind {
  identifier,
  keyword,
  string_literal,
  char_literal,
  number_literal,
  punctuation,
  comment,
  end,
};

inline std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::string_literal: return "string-literal";
    case TokenKind::char_literal: return "char-literal";
    case TokenKind::number_literal: return "number-literal";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::comment: return "comment";
    case TokenKind::end: return "end";
  }
  return "?";
}

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  Span span;
  std::size_t offset = 0;  // byte offset of text in the source

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::punctuation, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::keyword, t); }
};

}  // namespace vvd::java
