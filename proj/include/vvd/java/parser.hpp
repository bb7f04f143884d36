#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vvd/errors.hpp"
#include "vvd/java/ast.hpp"
#include "vvd/java/lexer.hpp"

namespace vvd::java {

// Decodes an integer literal's text: underscores, L suffix, hex/octal/binary.
// Floating point and out-of-range values yield nullopt.
inline std::optional<std::int64_t> decode_integer_literal(std::string_view raw) {
  bool negative = false;
  if (!raw.empty() && raw.front() == '-') {
    negative = true;
    raw.remove_prefix(1);
  }
  std::string digits;
  for (char c : raw)
    if (c != '_') digits.push_back(c);
  if (!digits.empty() && (digits.back() == 'l' || digits.back() == 'L')) digits.pop_back();
  if (digits.empty()) return std::nullopt;

  int base = 10;
  std::string_view body = digits;
  if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    base = 16;
    body.remove_prefix(2);
  } else if (body.size() > 2 && body[0] == '0' && (body[1] == 'b' || body[1] == 'B')) {
    base = 2;
    body.remove_prefix(2);
  } else if (body.size() > 1 && body[0] == '0') {
    base = 8;
    body.remove_prefix(1);
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value, base);
  if (ec != std::errc{} || ptr != body.data() + body.size()) return std::nullopt;
  // Hex/octal/binary literals may spell negative ints via two's complement.
  if (base != 10 && value <= 0xFFFFFFFFull && raw.back() != 'l' && raw.back() != 'L') {
    value = static_cast<std::uint64_t>(static_cast<std::int64_t>(static_cast<std::int32_t>(value)));
    std::int64_t v = static_cast<std::int64_t>(value);
    return negative ? -v : v;
  }
  if (value > static_cast<std::uint64_t>(INT64_MAX)) return std::nullopt;
  std::int64_t v = static_cast<std::int64_t>(value);
  return negative ? -v : v;
}

// Strips quotes and resolves the common escapes; unknown escapes keep the
// escaped character. Returns nullopt for text blocks with malformed shape.
inline std::optional<std::string> decode_string_literal(std::string_view raw) {
  if (raw.size() >= 6 && raw.substr(0, 3) == "\"\"\"") {
    raw = raw.substr(3, raw.size() - 6);
    auto nl = raw.find('\n');
    if (nl == std::string_view::npos) return std::nullopt;
    raw.remove_prefix(nl + 1);
  } else {
    if (raw.size() < 2) return std::nullopt;
    raw = raw.substr(1, raw.size() - 2);
  }
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '\\' || i + 1 == raw.size()) {
      out.push_back(raw[i]);
      continue;
    }
    char e = raw[++i];
    switch (e) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case 's': out.push_back(' '); break;
      case '0': out.push_back('\0'); break;
      default: out.push_back(e); break;
    }
  }
  return out;
}

namespace detail {

struct ParseFailure {
  Span span;
  std::string message;
};

// Thrown when the class skeleton itself is unrecoverable.
struct FatalFailure {
  Span span;
  std::string message;
};

inline bool is_primitive(std::string_view s) {
  return s == "int" || s == "long" || s == "short" || s == "byte" || s == "char" || s == "boolean" ||
         s == "float" || s == "double" || s == "void";
}

inline bool is_modifier_keyword(std::string_view s) {
  return s == "public" || s == "protected" || s == "private" || s == "static" || s == "final" ||
         s == "abstract" || s == "native" || s == "synchronized" || s == "transient" || s == "volatile" ||
         s == "strictfp" || s == "default";
}

inline bool is_binary_op(std::string_view s) {
  static constexpr std::string_view ops[] = {
      "=",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=", "+",  "-",
      "*",  "/",  "%",  "&",  "|",  "^",  "&&", "||", "==", "!=",  "<",   ">",    "<=", ">=", "<<",
  };
  return std::find(std::begin(ops), std::end(ops), s) != std::end(ops);
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file) : file_(std::move(file)) {
    toks_.reserve(tokens.size());
    for (auto& t : tokens)
      if (t.kind != TokenKind::comment) toks_.push_back(std::move(t));
    if (toks_.empty() || toks_.back().kind != TokenKind::end) {
      Token end;
      end.span.file = file_;
      toks_.push_back(std::move(end));
    }
  }

  ParseResult run() {
    ParseResult result;
    try {
      AstNode root = compilation_unit();
      result.unit = SourceUnit{file_, std::move(root)};
      result.diagnostics = std::move(diags_);
    } catch (const FatalFailure& f) {
      result.diagnostics = std::move(diags_);
      result.diagnostics.push_back({f.span, f.message, Severity::fatal});
    } catch (const ParseFailure& f) {
      result.diagnostics = std::move(diags_);
      result.diagnostics.push_back({f.span, f.message, Severity::fatal});
    }
    return result;
  }

 private:
  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
  std::vector<ParseDiagnostic> diags_;
  bool in_case_label_ = false;  // '->' ends a case label rather than starting a lambda

  // ---- token helpers -------------------------------------------------------

  const Token& tok(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at_end() const { return tok().kind == TokenKind::end; }
  bool punct(std::string_view p, std::size_t ahead = 0) const { return tok(ahead).is_punct(p); }
  bool keyword(std::string_view k, std::size_t ahead = 0) const { return tok(ahead).is_keyword(k); }
  bool ident(std::size_t ahead = 0) const { return tok(ahead).kind == TokenKind::identifier; }

  const Token& take() {
    const Token& t = tok();
    if (!at_end()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure{tok().span, msg}; }
  [[noreturn]] void fatal(const std::string& msg) const { throw FatalFailure{tok().span, msg}; }

  void expect_punct(std::string_view p) {
    if (!punct(p)) fail("expected '" + std::string(p) + "' but found '" + tok().text + "'");
    take();
  }

  Span span_from(std::size_t start) const {
    if (pos_ == 0 || pos_ <= start) return toks_[std::min(start, toks_.size() - 1)].span;
    return cover(toks_[start].span, toks_[pos_ - 1].span);
  }

  AstNode node(NodeKind kind, std::size_t start, NodeAttrs attrs = {}) const {
    AstNode n;
    n.kind = kind;
    n.span = span_from(start);
    n.attrs = std::move(attrs);
    return n;
  }

  // Index of the token closing the bracket at `open`, or nullopt.
  std::optional<std::size_t> matching(std::size_t open) const {
    const std::string& o = toks_[open].text;
    const std::string c = o == "(" ? ")" : o == "[" ? "]" : "}";
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind != TokenKind::punctuation) continue;
      if (t.text == o) ++depth;
      if (t.text == c && --depth == 0) return i;
    }
    return std::nullopt;
  }

  void skip_balanced() {
    auto close = matching(pos_);
    if (!close) fail("unbalanced '" + tok().text + "'");
    pos_ = *close + 1;
  }

  // Runs f, promoting ParseFailure to FatalFailure.
  template <typename F>
  auto guarded_fatal(F&& f) {
    try {
      return f();
    } catch (const ParseFailure& p) {
      throw FatalFailure{p.span, p.message};
    }
  }

  // ---- names, annotations, modifiers, types --------------------------------

  std::string qualified_name() {
    if (!ident()) fail("expected identifier");
    std::string name = take().text;
    while (punct(".") && ident(1)) {
      take();
      name += "." + take().text;
    }
    return name;
  }

  bool at_annotation() const { return punct("@") && !keyword("interface", 1); }

  void skip_annotation() {
    take();  // @
    qualified_name();
    if (punct("(")) skip_balanced();
  }

  void skip_modifiers() {
    for (;;) {
      if (at_annotation()) {
        skip_annotation();
      } else if (tok().kind == TokenKind::keyword && is_modifier_keyword(tok().text) &&
                 !(tok().text == "default" && (punct(":", 1) || punct("->", 1)))) {
        take();
      } else if (ident() && tok().text == "sealed" && (tok(1).kind == TokenKind::keyword || ident(1))) {
        take();
      } else if (ident() && tok().text == "non" && punct("-", 1) && tok(2).text == "sealed") {
        take();
        take();
        take();
      } else {
        return;
      }
    }
  }

  // Skips `<...>` type arguments/parameters. Returns false (position
  // restored) if the bracket contents do not look like types.
  bool skip_type_args() {
    std::size_t save = pos_;
    if (!punct("<")) return false;
    int depth = 0;
    while (!at_end()) {
      const Token& t = tok();
      if (t.is_punct("<")) {
        ++depth;
      } else if (t.is_punct(">")) {
        if (--depth == 0) {
          take();
          return true;
        }
      } else if (t.is_punct("@")) {
        take();
        if (!ident()) break;
        continue;
      } else if (!(t.kind == TokenKind::identifier || t.is_punct(".") || t.is_punct(",") || t.is_punct("?") ||
                   t.is_punct("&") || t.is_punct("[") || t.is_punct("]") || t.is_keyword("extends") ||
                   t.is_keyword("super") || (t.kind == TokenKind::keyword && is_primitive(t.text)))) {
        break;
      }
      take();
    }
    pos_ = save;
    return false;
  }

  // Parses a type and returns its simple name with generics and array dims
  // erased. Restores the position and returns nullopt on mismatch.
  std::optional<std::string> type() {
    std::size_t save = pos_;
    while (at_annotation()) skip_annotation();
    std::string simple;
    if (tok().kind == TokenKind::keyword && is_primitive(tok().text)) {
      simple = take().text;
    } else if (ident()) {
      simple = take().text;
      if (punct("<") && !skip_type_args()) {
        pos_ = save;
        return std::nullopt;
      }
      while (punct(".") && (ident(1) || punct("@", 1))) {
        take();
        while (at_annotation()) skip_annotation();
        if (!ident()) {
          pos_ = save;
          return std::nullopt;
        }
        simple = take().text;
        if (punct("<") && !skip_type_args()) {
          pos_ = save;
          return std::nullopt;
        }
      }
    } else {
      return std::nullopt;
    }
    for (;;) {
      std::size_t before = pos_;
      while (at_annotation()) skip_annotation();
      if (punct("[") && punct("]", 1)) {
        take();
        take();
      } else {
        pos_ = before;
        break;
      }
    }
    return simple;
  }

  // ---- compilation unit ----------------------------------------------------

  AstNode compilation_unit() {
    AstNode root;
    root.kind = NodeKind::SourceUnit;
    root.span = Span{file_, 1, 1, 1, 1};

    std::size_t save = pos_;
    while (at_annotation()) skip_annotation();
    if (keyword("package")) {
      std::size_t start = pos_;
      take();
      std::string path = guarded_fatal([&] { return qualified_name(); });
      if (!punct(";")) fatal("expected ';' after package declaration");
      take();
      root.children.push_back(node(NodeKind::PackageDecl, start, NameAttrs{path}));
    } else {
      pos_ = save;
    }

    while (!at_end()) {
      if (punct(";")) {
        take();
      } else if (keyword("import")) {
        root.children.push_back(import_decl());
      } else {
        std::size_t start = pos_;
        guarded_fatal([&] {
          skip_modifiers();
          return 0;
        });
        if (!at_type_decl()) {
          pos_ = start;
          fatal("unexpected '" + tok().text + "' at top level");
        }
        root.children.push_back(type_decl(start));
      }
    }
    root.span.end_line = tok().span.end_line;
    root.span.end_col = tok().span.end_col;
    return root;
  }

  AstNode import_decl() {
    std::size_t start = pos_;
    take();
    ImportAttrs attrs;
    if (keyword("static")) {
      take();
      attrs.is_static = true;
    }
    attrs.path = guarded_fatal([&] { return qualified_name(); });
    if (punct(".") && punct("*", 1)) {
      take();
      take();
      attrs.is_wildcard = true;
    }
    if (!punct(";")) fatal("expected ';' after import");
    take();
    return node(NodeKind::ImportDecl, start, std::move(attrs));
  }

  bool at_type_decl() const {
    if (keyword("class") || keyword("interface") || keyword("enum")) return true;
    if (punct("@") && keyword("interface", 1)) return true;
    return ident() && tok().text == "record" && ident(1) && (punct("(", 2) || punct("<", 2));
  }

  // Type declaration; modifiers already consumed, `start` marks the first one.
  AstNode type_decl(std::size_t start) {
    bool is_interface = false;
    bool is_enum = false;
    bool is_record = false;
    if (punct("@")) {
      take();
      take();
      is_interface = true;
    } else if (keyword("interface")) {
      take();
      is_interface = true;
    } else if (keyword("enum")) {
      take();
      is_enum = true;
    } else if (keyword("class")) {
      take();
    } else {
      take();  // record
      is_record = true;
    }
    if (!ident()) fatal("expected type name");
    std::string name = take().text;

    std::vector<AstNode> header_members;
    if (punct("<") && !skip_type_args()) fatal("malformed type parameters");
    if (is_record) {
      if (!punct("(")) fatal("expected record components");
      for (auto& p : parameters()) {
        p.kind = NodeKind::FieldDecl;
        header_members.push_back(std::move(p));
      }
    }
    while (!punct("{")) {
      if (at_end() || punct("}") || punct(";")) fatal("expected '{' to open body of '" + name + "'");
      if (punct("(")) {
        guarded_fatal([&] {
          skip_balanced();
          return 0;
        });
      } else {
        take();
      }
    }

    AstNode decl;
    decl.kind = is_interface ? NodeKind::InterfaceDecl : NodeKind::ClassDecl;
    decl.attrs = NameAttrs{name};
    decl.children = std::move(header_members);
    class_body(decl, is_enum, name);
    decl.span = span_from(start);
    return decl;
  }

  // Consumes `{ members }` appending members to decl.children.
  void class_body(AstNode& decl, bool is_enum, const std::string& type_name) {
    auto close = matching(pos_);
    if (!close) fatal("unbalanced braces in body of '" + type_name + "'");
    take();  // {
    if (is_enum) enum_constants(decl, type_name, *close);
    while (pos_ < *close) member(decl, *close);
    if (pos_ != *close) fatal("member overran the body of '" + type_name + "'");
    take();  // }
  }

  void enum_constants(AstNode& decl, const std::string& type_name, std::size_t close) {
    while (pos_ < close) {
      if (punct(";")) {
        take();
        return;
      }
      std::size_t start = pos_;
      try {
        while (at_annotation()) skip_annotation();
        if (!ident()) return;  // no constants; members follow
        AstNode constant;
        constant.kind = NodeKind::FieldDecl;
        constant.attrs = DeclAttrs{type_name, {take().text}};
        if (punct("(")) constant.children.push_back(arguments());
        if (punct("{")) {
          AstNode anon;
          anon.kind = NodeKind::ClassDecl;
          anon.attrs = NameAttrs{""};
          std::size_t body_start = pos_;
          class_body(anon, false, type_name);
          anon.span = span_from(body_start);
          constant.children.push_back(std::move(anon));
        }
        constant.span = span_from(start);
        decl.children.push_back(std::move(constant));
      } catch (const ParseFailure& f) {
        recover(f, start, close);
      }
      if (punct(",")) {
        take();
      } else if (punct(";")) {
        take();
        return;
      } else {
        return;
      }
    }
  }

  // Records a recovered diagnostic and skips to the end of the member that
  // began at `start`: the next top-level ';' or balanced '{...}'.
  void recover(const ParseFailure& f, std::size_t start, std::size_t limit) {
    diags_.push_back({f.span, f.message, Severity::recovered});
    pos_ = start;
    while (pos_ < limit) {
      if (punct(";")) {
        take();
        return;
      }
      if (punct("(") || punct("[") || punct("{")) {
        auto close = matching(pos_);
        if (!close || *close >= limit) {
          pos_ = limit;
          return;
        }
        bool brace = punct("{");
        pos_ = *close + 1;
        if (brace) return;
        continue;
      }
      take();
    }
  }

  void member(AstNode& decl, std::size_t close) {
    std::size_t start = pos_;
    if (punct(";")) {
      take();
      return;
    }
    try {
      if (punct("{") || (keyword("static") && punct("{", 1))) {
        if (keyword("static")) take();
        decl.children.push_back(body_block());
        return;
      }
      skip_modifiers();
      if (at_type_decl()) {
        decl.children.push_back(type_decl(start));
        return;
      }
      if (punct("<")) {
        if (!skip_type_args()) fail("malformed type parameters");
      }
      // Constructor, or a record's compact constructor.
      if (ident() && (punct("(", 1) || punct("{", 1))) {
        std::string name = take().text;
        decl.children.push_back(method_rest(start, std::move(name)));
        return;
      }
      auto ty = type();
      if (!ty) fail("expected member declaration but found '" + tok().text + "'");
      if (!ident()) fail("expected member name but found '" + tok().text + "'");
      if (punct("(", 1)) {
        std::string name = take().text;
        decl.children.push_back(method_rest(start, std::move(name)));
        return;
      }
      AstNode field = declarators(NodeKind::FieldDecl, *ty, start);
      if (!punct(";")) fail("expected ';' after field declaration");
      take();
      field.span = span_from(start);
      decl.children.push_back(std::move(field));
    } catch (const ParseFailure& f) {
      recover(f, start, close);
    }
  }

  // After the method/constructor name: parameters, throws, body.
  AstNode method_rest(std::size_t start, std::string name) {
    AstNode method;
    method.kind = NodeKind::MethodDecl;
    method.attrs = NameAttrs{std::move(name)};
    if (punct("(")) method.children = parameters();
    while (!punct("{") && !punct(";")) {
      if (at_end() || punct("}")) fatal("expected method body for '" + std::get<NameAttrs>(method.attrs).name + "'");
      if (punct("(")) {
        skip_balanced();
      } else {
        take();
      }
    }
    if (punct(";")) {
      take();
    } else {
      method.children.push_back(body_block());
    }
    method.span = span_from(start);
    return method;
  }

  // Parses a brace-delimited body. A failure inside it becomes a recovered
  // diagnostic and an Unknown node covering the body.
  AstNode body_block() {
    std::size_t start = pos_;
    auto close = matching(pos_);
    if (!close) fatal("unbalanced braces");
    try {
      AstNode b = block();
      if (pos_ != *close + 1) fail("block parse ended at an unexpected position");
      return b;
    } catch (const ParseFailure& f) {
      diags_.push_back({f.span, f.message, Severity::recovered});
      pos_ = *close + 1;
      return node(NodeKind::Unknown, start, NameAttrs{"body"});
    }
  }

  // Formal parameter list. Any malformation is fatal: the list is part of
  // the class skeleton.
  std::vector<AstNode> parameters() {
    std::vector<AstNode> params;
    take();  // (
    if (punct(")")) {
      take();
      return params;
    }
    for (;;) {
      std::size_t start = pos_;
      guarded_fatal([&] {
        skip_modifiers();
        return 0;
      });
      auto ty = type();
      if (!ty) fatal("malformed parameter list: expected parameter type but found '" + tok().text + "'");
      if (punct("...")) take();
      std::string pname;
      if (keyword("this")) {
        pname = take().text;
      } else if (ident()) {
        pname = take().text;
      } else {
        fatal("malformed parameter list: expected parameter name but found '" + tok().text + "'");
      }
      while (punct("[") && punct("]", 1)) {
        take();
        take();
      }
      params.push_back(node(NodeKind::LocalVarDecl, start, DeclAttrs{*ty, {pname}}));
      if (punct(",")) {
        take();
        continue;
      }
      if (punct(")")) {
        take();
        return params;
      }
      fatal("malformed parameter list: unexpected '" + tok().text + "'");
    }
  }

  // name [dims] [= init] {, name [dims] [= init]}; leaves the terminator.
  AstNode declarators(NodeKind kind, const std::string& type_name, std::size_t start) {
    AstNode decl;
    decl.kind = kind;
    DeclAttrs attrs{type_name, {}};
    for (;;) {
      if (!ident()) fail("expected variable name but found '" + tok().text + "'");
      attrs.names.push_back(take().text);
      while (punct("[") && punct("]", 1)) {
        take();
        take();
      }
      if (punct("=")) {
        take();
        decl.children.push_back(punct("{") ? array_initializer() : expression());
      }
      if (!punct(",")) break;
      take();
    }
    decl.attrs = std::move(attrs);
    decl.span = span_from(start);
    return decl;
  }

  // ---- statements ----------------------------------------------------------

  AstNode block() {
    std::size_t start = pos_;
    expect_punct("{");
    AstNode b;
    b.kind = NodeKind::Block;
    while (!punct("}")) {
      if (at_end()) fail("unterminated block");
      statement_into(b.children);
    }
    take();
    b.span = span_from(start);
    return b;
  }

  void statement_into(std::vector<AstNode>& out) {
    if (auto s = statement()) out.push_back(std::move(*s));
  }

  AstNode labelled(std::string label, std::size_t start, std::vector<AstNode> children) const {
    AstNode n = node(NodeKind::Unknown, start, NameAttrs{std::move(label)});
    n.children = std::move(children);
    return n;
  }

  AstNode paren_expression() {
    expect_punct("(");
    AstNode e = expression();
    expect_punct(")");
    return e;
  }

  std::optional<AstNode> statement() {
    std::size_t start = pos_;
    const Token& t = tok();

    if (t.is_punct("{")) return block();
    if (t.is_punct(";")) {
      take();
      return std::nullopt;
    }
    if (t.kind == TokenKind::keyword) {
      const std::string kw = t.text;
      if (kw == "if") {
        take();
        std::vector<AstNode> kids;
        kids.push_back(paren_expression());
        statement_into(kids);
        if (keyword("else")) {
          take();
          statement_into(kids);
        }
        return labelled(kw, start, std::move(kids));
      }
      if (kw == "while" || kw == "synchronized" || kw == "switch") {
        take();
        std::vector<AstNode> kids;
        kids.push_back(paren_expression());
        if (kw == "switch") {
          kids.push_back(block());
        } else {
          statement_into(kids);
        }
        return labelled(kw, start, std::move(kids));
      }
      if (kw == "do") {
        take();
        std::vector<AstNode> kids;
        statement_into(kids);
        if (!keyword("while")) fail("expected 'while' after do body");
        take();
        kids.push_back(paren_expression());
        expect_punct(";");
        return labelled(kw, start, std::move(kids));
      }
      if (kw == "for") {
        take();
        std::vector<AstNode> kids = for_header();
        statement_into(kids);
        return labelled(kw, start, std::move(kids));
      }
      if (kw == "try") return try_statement();
      if (kw == "return" || kw == "throw") {
        take();
        std::vector<AstNode> kids;
        if (!punct(";")) kids.push_back(expression());
        expect_punct(";");
        return labelled(kw, start, std::move(kids));
      }
      if (kw == "break" || kw == "continue") {
        take();
        if (ident()) take();
        expect_punct(";");
        return std::nullopt;
      }
      if (kw == "case") {
        take();
        std::vector<AstNode> kids;
        for (;;) {
          if (keyword("default")) {
            take();
          } else if (auto pattern = case_pattern()) {
            kids.push_back(std::move(*pattern));
          } else {
            in_case_label_ = true;
            try {
              kids.push_back(expression());
            } catch (...) {
              in_case_label_ = false;
              throw;
            }
            in_case_label_ = false;
          }
          if (punct(",")) {
            take();
            continue;
          }
          break;
        }
        if (ident() && tok().text == "when") {
          take();
          kids.push_back(expression());
        }
        if (punct(":") || punct("->")) {
          take();
        } else {
          fail("expected ':' or '->' after case label");
        }
        return labelled(kw, start, std::move(kids));
      }
      if (kw == "default" && (punct(":", 1) || punct("->", 1))) {
        take();
        take();
        return std::nullopt;
      }
      if (kw == "assert") {
        take();
        std::vector<AstNode> kids;
        kids.push_back(expression());
        if (punct(":")) {
          take();
          kids.push_back(expression());
        }
        expect_punct(";");
        return labelled(kw, start, std::move(kids));
      }
    }

    // Local type declaration.
    {
      std::size_t save = pos_;
      skip_modifiers();
      if (at_type_decl()) return type_decl(start);
      pos_ = save;
    }

    if (ident() && tok().text == "yield" && !punct("=", 1) && !punct(".", 1) && !punct("[", 1) &&
        !punct(";", 1) && !punct("++", 1) && !punct("--", 1)) {
      take();
      std::vector<AstNode> kids;
      kids.push_back(expression());
      expect_punct(";");
      return labelled("yield", start, std::move(kids));
    }

    if (ident() && punct(":", 1)) {
      take();
      take();
      return statement();
    }

    if (auto decl = local_var_decl()) {
      expect_punct(";");
      decl->span = span_from(start);
      return decl;
    }

    AstNode e = expression();
    expect_punct(";");
    AstNode s = node(NodeKind::ExprStatement, start);
    s.children.push_back(std::move(e));
    return s;
  }

  // Speculatively parses `[final|@Ann]* Type name ...`; restores position
  // and returns nullopt when the tokens are not a declaration.
  std::optional<AstNode> local_var_decl() {
    std::size_t start = pos_;
    while (keyword("final") || at_annotation()) {
      if (keyword("final")) {
        take();
      } else {
        skip_annotation();
      }
    }
    auto ty = type();
    if (ty && ident() &&
        (punct("=", 1) || punct(",", 1) || punct(";", 1) || punct("[", 1) || punct(":", 1) || punct(")", 1))) {
      return declarators(NodeKind::LocalVarDecl, *ty, start);
    }
    pos_ = start;
    return std::nullopt;
  }

  // `case Type name` type pattern (record deconstruction is skipped).
  std::optional<AstNode> case_pattern() {
    std::size_t start = pos_;
    if (keyword("final")) take();
    auto ty = type();
    if (ty && punct("(")) {
      skip_balanced();
      return node(NodeKind::Unknown, start, NameAttrs{"record-pattern"});
    }
    if (ty && ident() && (punct("->", 1) || punct(":", 1) || punct(",", 1) || tok(1).text == "when")) {
      std::string name = take().text;
      return node(NodeKind::LocalVarDecl, start, DeclAttrs{*ty, {name}});
    }
    pos_ = start;
    return std::nullopt;
  }

  std::vector<AstNode> for_header() {
    expect_punct("(");
    std::vector<AstNode> kids;
    while (!punct(")")) {
      if (at_end()) fail("unterminated for header");
      if (punct(";") || punct(",") || punct(":")) {
        take();
        continue;
      }
      if (auto decl = local_var_decl()) {
        kids.push_back(std::move(*decl));
        continue;
      }
      kids.push_back(expression());
    }
    take();
    return kids;
  }

  AstNode try_statement() {
    std::size_t start = pos_;
    take();  // try
    std::vector<AstNode> kids;
    if (punct("(")) {
      take();
      while (!punct(")")) {
        if (at_end()) fail("unterminated try resources");
        if (punct(";")) {
          take();
          continue;
        }
        if (auto decl = local_var_decl()) {
          kids.push_back(std::move(*decl));
        } else {
          kids.push_back(expression());
        }
      }
      take();
    }
    kids.push_back(block());
    while (keyword("catch")) {
      std::size_t cstart = pos_;
      take();
      expect_punct("(");
      skip_modifiers();
      auto ty = type();
      if (!ty) fail("expected exception type in catch");
      while (punct("|")) {
        take();
        if (!type()) fail("expected exception type after '|'");
      }
      if (!ident()) fail("expected catch parameter name");
      std::string name = take().text;
      expect_punct(")");
      kids.push_back(node(NodeKind::LocalVarDecl, cstart, DeclAttrs{*ty, {name}}));
      kids.push_back(block());
    }
    if (keyword("finally")) {
      take();
      kids.push_back(block());
    }
    return labelled("try", start, std::move(kids));
  }

  // ---- expressions ---------------------------------------------------------

  AstNode expression() {
    std::size_t start = pos_;
    std::vector<AstNode> terms;
    terms.push_back(unary());
    for (;;) {
      const Token& t = tok();
      if (t.is_punct("?")) {
        take();
        terms.push_back(expression());
        expect_punct(":");
        terms.push_back(unary());
        continue;
      }
      if (t.is_punct("->") && !in_case_label_) {
        take();
        terms.push_back(punct("{") ? block() : expression());
        break;
      }
      if (t.is_keyword("instanceof")) {
        take();
        std::size_t tstart = pos_;
        if (keyword("final")) take();
        auto ty = type();
        if (!ty) fail("expected type after instanceof");
        if (punct("(")) {
          skip_balanced();
        } else if (ident()) {
          std::string name = take().text;
          terms.push_back(node(NodeKind::LocalVarDecl, tstart, DeclAttrs{*ty, {name}}));
        }
        continue;
      }
      if (t.is_punct("::")) {
        take();
        if (punct("<") && !skip_type_args()) fail("malformed method reference");
        std::size_t rstart = pos_;
        if (!(ident() || keyword("new"))) fail("expected method reference name");
        std::string name = take().text;
        terms.push_back(node(NodeKind::Identifier, rstart, NameAttrs{name}));
        continue;
      }
      if (t.kind == TokenKind::punctuation && is_binary_op(t.text)) {
        const bool gt = t.is_punct(">");
        take();
        if (gt) {
          while (punct(">") || punct(">=")) take();
        }
        terms.push_back(unary());
        continue;
      }
      break;
    }
    if (terms.size() == 1) return std::move(terms.front());
    return labelled("expr", start, std::move(terms));
  }

  bool starts_operand() const {
    const Token& t = tok();
    switch (t.kind) {
      case TokenKind::identifier:
      case TokenKind::string_literal:
      case TokenKind::char_literal:
      case TokenKind::number_literal:
        return true;
      case TokenKind::keyword:
        return t.text == "this" || t.text == "super" || t.text == "new" || t.text == "true" ||
               t.text == "false" || t.text == "null" || t.text == "switch" || is_primitive(t.text);
      case TokenKind::punctuation:
        return t.text == "(" || t.text == "!" || t.text == "~";
      default:
        return false;
    }
  }

  AstNode unary() {
    std::size_t start = pos_;
    const Token& t = tok();
    if (t.is_punct("-") && tok(1).kind == TokenKind::number_literal) {
      take();
      std::string raw = "-" + take().text;
      LiteralAttrs lit{raw, std::nullopt};
      if (auto v = decode_integer_literal(raw)) lit.value = *v;
      return postfix(node(NodeKind::Literal, start, std::move(lit)), start);
    }
    if (t.is_punct("+") || t.is_punct("-") || t.is_punct("!") || t.is_punct("~") || t.is_punct("++") ||
        t.is_punct("--")) {
      take();
      return unary();
    }
    if (t.is_punct("(")) {
      auto close = matching(pos_);
      if (!close) fail("unbalanced '('");
      // Lambda parameter list.
      if (toks_[*close + 1].is_punct("->")) {
        pos_ = *close + 1;
        return node(NodeKind::Unknown, start, NameAttrs{"lambda-params"});
      }
      // Cast: the parenthesised tokens form exactly a type.
      {
        std::size_t save = pos_;
        take();
        auto ty = type();
        while (ty && punct("&")) {
          take();
          if (!type()) ty.reset();
        }
        if (ty && pos_ == *close) {
          take();
          const bool primitive = is_primitive(*ty);
          if (starts_operand() || (primitive && (punct("-") || punct("+")))) {
            AstNode cast = node(NodeKind::Unknown, start, NameAttrs{"cast:" + *ty});
            cast.children.push_back(unary());
            cast.span = span_from(start);
            return cast;
          }
        }
        pos_ = save;
      }
      take();
      AstNode inner = expression();
      expect_punct(")");
      AstNode paren = node(NodeKind::Unknown, start, NameAttrs{"paren"});
      paren.children.push_back(std::move(inner));
      return postfix(std::move(paren), start);
    }
    return postfix(primary(), start);
  }

  AstNode primary() {
    std::size_t start = pos_;
    const Token& t = tok();
    switch (t.kind) {
      case TokenKind::number_literal: {
        LiteralAttrs lit{take().text, std::nullopt};
        if (auto v = decode_integer_literal(lit.raw)) lit.value = *v;
        return node(NodeKind::Literal, start, std::move(lit));
      }
      case TokenKind::string_literal: {
        LiteralAttrs lit{take().text, std::nullopt};
        if (auto v = decode_string_literal(lit.raw)) lit.value = *v;
        return node(NodeKind::Literal, start, std::move(lit));
      }
      case TokenKind::char_literal:
        return node(NodeKind::Literal, start, LiteralAttrs{take().text, std::nullopt});
      case TokenKind::identifier: {
        std::string name = take().text;
        if (punct("(")) return invocation(start, std::nullopt, std::move(name), std::nullopt);
        return node(NodeKind::Identifier, start, NameAttrs{std::move(name)});
      }
      case TokenKind::keyword: {
        if (t.text == "true" || t.text == "false" || t.text == "null")
          return node(NodeKind::Literal, start, LiteralAttrs{take().text, std::nullopt});
        if (t.text == "this" || t.text == "super") {
          std::string name = take().text;
          if (punct("(")) return invocation(start, std::nullopt, std::move(name), std::nullopt);
          return node(NodeKind::Identifier, start, NameAttrs{std::move(name)});
        }
        if (t.text == "new") return creation();
        if (t.text == "switch") {
          take();
          std::vector<AstNode> kids;
          kids.push_back(paren_expression());
          kids.push_back(block());
          return labelled("switch", start, std::move(kids));
        }
        if (is_primitive(t.text)) {
          std::string name = take().text;
          while (punct("[") && punct("]", 1)) {
            take();
            take();
          }
          return node(NodeKind::Identifier, start, NameAttrs{std::move(name)});
        }
        break;
      }
      case TokenKind::punctuation:
        if (t.is_punct("{")) return array_initializer();
        break;
      default:
        break;
    }
    fail("unexpected '" + t.text + "' in expression");
  }

  AstNode array_initializer() {
    std::size_t start = pos_;
    expect_punct("{");
    AstNode init = node(NodeKind::Unknown, start, NameAttrs{"array-init"});
    while (!punct("}")) {
      if (at_end()) fail("unterminated array initializer");
      if (punct(",")) {
        take();
        continue;
      }
      init.children.push_back(punct("{") ? array_initializer() : expression());
    }
    take();
    init.span = span_from(start);
    return init;
  }

  AstNode arguments() {
    std::size_t start = pos_;
    expect_punct("(");
    AstNode args;
    args.kind = NodeKind::ArgumentList;
    if (!punct(")")) {
      for (;;) {
        args.children.push_back(expression());
        if (punct(",")) {
          take();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    args.span = span_from(start);
    return args;
  }

  AstNode invocation(std::size_t start, std::optional<std::string> qualifier, std::string member,
                     std::optional<AstNode> receiver) {
    AstNode call;
    call.kind = NodeKind::MethodInvocation;
    MemberAttrs attrs{std::move(qualifier), std::move(member), receiver.has_value()};
    if (receiver) call.children.push_back(std::move(*receiver));
    call.children.push_back(arguments());
    call.attrs = std::move(attrs);
    call.span = span_from(start);
    return call;
  }

  // Dotted text of a plain name chain (a, a.b, this.a), else nullopt.
  static std::optional<std::string> name_chain(const AstNode& n) {
    if (n.kind == NodeKind::Identifier) return std::string(n.name());
    if (n.kind == NodeKind::FieldAccess) {
      auto* m = n.as<MemberAttrs>();
      if (m && !m->receiver_child && m->qualifier) return *m->qualifier + "." + m->member;
    }
    return std::nullopt;
  }

  AstNode postfix(AstNode cur, std::size_t start) {
    for (;;) {
      if (punct(".")) {
        take();
        if (punct("<") && !skip_type_args()) fail("malformed explicit type arguments");
        if (keyword("new")) {
          AstNode inner = creation();
          AstNode outer = node(NodeKind::Unknown, start, NameAttrs{"qualified-new"});
          outer.children.push_back(std::move(cur));
          outer.children.push_back(std::move(inner));
          cur = std::move(outer);
          continue;
        }
        if (!(ident() || keyword("class") || keyword("this") || keyword("super")))
          fail("expected member name after '.' but found '" + tok().text + "'");
        std::string member = take().text;
        auto chain = name_chain(cur);
        if (punct("(")) {
          if (chain) {
            cur = invocation(start, std::move(chain), std::move(member), std::nullopt);
          } else {
            cur = invocation(start, std::nullopt, std::move(member), std::move(cur));
          }
          continue;
        }
        AstNode access;
        access.kind = NodeKind::FieldAccess;
        if (chain) {
          access.attrs = MemberAttrs{std::move(chain), std::move(member), false};
        } else {
          access.attrs = MemberAttrs{std::nullopt, std::move(member), true};
          access.children.push_back(std::move(cur));
        }
        access.span = span_from(start);
        cur = std::move(access);
        continue;
      }
      if (punct("[")) {
        if (punct("]", 1)) {
          take();
          take();
          continue;
        }
        take();
        AstNode index = expression();
        expect_punct("]");
        AstNode access = node(NodeKind::Unknown, start, NameAttrs{"index"});
        access.children.push_back(std::move(cur));
        access.children.push_back(std::move(index));
        cur = std::move(access);
        continue;
      }
      if (punct("++") || punct("--")) {
        take();
        continue;
      }
      return cur;
    }
  }

  AstNode creation() {
    std::size_t start = pos_;
    take();  // new
    while (at_annotation()) skip_annotation();
    if (punct("<") && !skip_type_args()) fail("malformed type arguments after new");
    std::string simple;
    if (tok().kind == TokenKind::keyword && is_primitive(tok().text)) {
      simple = take().text;
    } else {
      if (!ident()) fail("expected type after new");
      simple = take().text;
      if (punct("<") && !skip_type_args()) fail("malformed type arguments");
      while (punct(".") && ident(1)) {
        take();
        simple = take().text;
        if (punct("<") && !skip_type_args()) fail("malformed type arguments");
      }
    }
    AstNode created;
    created.kind = NodeKind::ObjectCreation;
    created.attrs = NameAttrs{simple};
    if (punct("(")) {
      created.children.push_back(arguments());
      if (punct("{")) {
        AstNode anon;
        anon.kind = NodeKind::ClassDecl;
        anon.attrs = NameAttrs{""};
        std::size_t body_start = pos_;
        class_body(anon, false, simple);
        anon.span = span_from(body_start);
        created.children.push_back(std::move(anon));
      }
    } else if (punct("[")) {
      while (punct("[")) {
        take();
        if (!punct("]")) created.children.push_back(expression());
        expect_punct("]");
      }
      if (punct("{")) created.children.push_back(array_initializer());
    } else {
      fail("expected '(' or '[' after type in object creation");
    }
    created.span = span_from(start);
    return created;
  }
};

// Lossily repairs invalid UTF-8 in place (each bad byte becomes U+FFFD).
// Returns true when any byte was replaced.
inline bool repair_utf8(std::string& text) {
  std::string out;
  bool changed = false;
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  std::size_t n = text.size();
  for (std::size_t i = 0; i < n;) {
    unsigned char c = s[i];
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    bool valid = len > 0 && i + len <= n;
    for (std::size_t k = 1; valid && k < len; ++k) valid = (s[i + k] & 0xC0) == 0x80;
    if (valid && len == 2) valid = c >= 0xC2;
    if (valid && len == 3) {
      unsigned cp = ((c & 0x0F) << 12) | ((s[i + 1] & 0x3F) << 6) | (s[i + 2] & 0x3F);
      valid = cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF);
    }
    if (valid && len == 4) {
      unsigned cp = ((c & 0x07) << 18) | ((s[i + 1] & 0x3F) << 12) | ((s[i + 2] & 0x3F) << 6) | (s[i + 3] & 0x3F);
      valid = cp >= 0x10000 && cp <= 0x10FFFF;
    }
    if (valid) {
      out.append(text, i, len);
      i += len;
    } else {
      out += "\xEF\xBF\xBD";
      changed = true;
      ++i;
    }
  }
  if (changed) text = std::move(out);
  return changed;
}

}  // namespace detail

// Builds a SourceUnit from a token sequence produced by tokenize().
inline ParseResult parse_compilation_unit(std::vector<Token> tokens, const std::string& file = {}) {
  std::string f = file;
  if (f.empty() && !tokens.empty()) f = tokens.front().span.file;
  return detail::Parser(std::move(tokens), std::move(f)).run();
}

// tokenize + parse; a LexError becomes a fatal diagnostic.
inline ParseResult parse_source(std::string_view source, const std::string& file) {
  try {
    return parse_compilation_unit(tokenize(source, file), file);
  } catch (const LexError& e) {
    ParseResult r;
    r.diagnostics.push_back({e.span, e.message, Severity::fatal});
    return r;
  }
}

// Reads and parses one file. `display_name` (default: the path) is recorded
// as the file in every span. Throws IoError if the file cannot be read.
inline ParseResult parse_file(const std::filesystem::path& path, const std::string& display_name = {}) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw IoError("cannot read '" + path.string() + "': not a file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  std::string text = std::move(buf).str();

  const std::string name = display_name.empty() ? path.generic_string() : display_name;
  const bool repaired = detail::repair_utf8(text);
  ParseResult r = parse_source(text, name);
  if (repaired) {
    r.diagnostics.insert(r.diagnostics.begin(),
                         ParseDiagnostic{Span{name, 1, 1, 1, 1}, "invalid UTF-8 replaced with U+FFFD",
                                         Severity::recovered});
  }
  return r;
}

}  // namespace vvd::java
