#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "vvd/errors.hpp"
#include "vvd/java/token.hpp"

namespace vvd::java {

namespace detail {

inline constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",         "case",      "catch",
    "char",     "class",      "const",     "continue",  "default",      "do",        "double",
    "else",     "enum",       "extends",   "final",     "finally",      "float",     "for",
    "goto",     "if",         "implements", "import",   "instanceof",   "int",       "interface",
    "long",     "native",     "new",       "package",   "private",      "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",        "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",          "void",      "volatile",
    "while",    "true",       "false",     "null",
};

// Longest match first. Shift operators ">>" and ">>>" lex as runs of ">"
// tokens, so a nested generic closer is always a single ">".
inline constexpr std::array<std::string_view, 23> kMultiPunct = {
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=", "/=", "&=", "|=", "^=", "%=", "<<",
};

inline constexpr std::string_view kSinglePunct = "(){}[];,.=><!~?:+-*/&|^%@";

inline bool is_keyword(std::string_view s) {
  return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

inline bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

inline bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

inline bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;  // BOM occupies no column
    for (;;) {
      skip_whitespace();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::end;
    end.offset = pos_;
    end.span = Span{file_, line_, col_, line_, col_};
    out.push_back(std::move(end));
    return out;
  }

 private:
  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : '\0';
  }
  bool at_end(std::size_t ahead = 0) const { return pos_ + ahead >= src_.size(); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_whitespace() {
    while (!at_end()) {
      unsigned char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        advance();
      } else {
        break;
      }
    }
  }

  Span here() const { return Span{file_, line_, col_, line_, col_}; }

  Token make(TokenKind kind, std::size_t start, const Span& begin) const {
    Token t;
    t.kind = kind;
    t.text = std::string(src_.substr(start, pos_ - start));
    t.offset = start;
    t.span = begin;
    t.span.end_line = line_;
    t.span.end_col = col_;
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    const Span begin = here();
    unsigned char c = peek();

    if (c == '/' && peek(1) == '/') {
      while (!at_end() && peek() != '\n') advance();
      return make(TokenKind::comment, start, begin);
    }
    if (c == '/' && peek(1) == '*') {
      advance();
      advance();
      for (;;) {
        if (at_end()) throw LexError(begin, "unterminated block comment");
        if (peek() == '*' && peek(1) == '/') {
          advance();
          advance();
          break;
        }
        advance();
      }
      return make(TokenKind::comment, start, begin);
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') return text_block(start, begin);
      quoted('"', begin);
      return make(TokenKind::string_literal, start, begin);
    }
    if (c == '\'') {
      quoted('\'', begin);
      return make(TokenKind::char_literal, start, begin);
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
      number();
      return make(TokenKind::number_literal, start, begin);
    }
    if (ident_start(c)) {
      while (!at_end() && ident_part(peek())) advance();
      Token t = make(TokenKind::identifier, start, begin);
      if (is_keyword(t.text)) t.kind = TokenKind::keyword;
      return t;
    }
    for (std::string_view p : kMultiPunct) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        return make(TokenKind::punctuation, start, begin);
      }
    }
    if (kSinglePunct.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::punctuation, start, begin);
    }
    throw LexError(begin, "illegal character '" + std::string(1, static_cast<char>(c)) + "'");
  }

  void quoted(char quote, const Span& begin) {
    advance();
    for (;;) {
      if (at_end() || peek() == '\n') {
        throw LexError(begin, quote == '"' ? "unterminated string literal" : "unterminated char literal");
      }
      unsigned char c = peek();
      if (c == '\\') {
        advance();
        if (at_end() || peek() == '\n') continue;  // reported on the next iteration
        advance();
        continue;
      }
      advance();
      if (c == static_cast<unsigned char>(quote)) return;
    }
  }

  Token text_block(std::size_t start, const Span& begin) {
    advance();
    advance();
    advance();
    for (;;) {
      if (at_end()) throw LexError(begin, "unterminated text block");
      if (peek() == '\\') {
        advance();
        if (!at_end()) advance();
        continue;
      }
      if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
        advance();
        advance();
        advance();
        return make(TokenKind::string_literal, start, begin);
      }
      advance();
    }
  }

  void number() {
    const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    bool seen_dot = false;
    bool seen_exp = false;
    if (hex) {
      advance();
      advance();
    }
    while (!at_end()) {
      unsigned char c = peek();
      if (c == '.') {
        if (seen_dot || seen_exp || !(is_digit(peek(1)) || !ident_start(peek(1)))) break;
        seen_dot = true;
        advance();
        continue;
      }
      const bool exp_marker = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
      if (exp_marker) {
        seen_exp = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        continue;
      }
      if (ident_part(c) && c < 0x80) {
        advance();
        continue;
      }
      break;
    }
  }
};

}  // namespace detail

// Splits Java source into tokens. Comments are kept as TokenKind::comment;
// whitespace is skipped but recoverable from offsets. The final token is
// always TokenKind::end.
inline std::vector<Token> tokenize(std::string_view source, const std::string& file = {}) {
  return detail::Lexer(source, file).run();
}

}  // namespace vvd::java
