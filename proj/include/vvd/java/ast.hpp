#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vvd/span.hpp"

namespace vvd::java {

enum class NodeKind {
  SourceUnit,
  PackageDecl,
  ImportDecl,
  ClassDecl,
  InterfaceDecl,
  FieldDecl,
  MethodDecl,
  LocalVarDecl,
  Block,
  ExprStatement,
  MethodInvocation,
  ObjectCreation,
  FieldAccess,
  Identifier,
  Literal,
  ArgumentList,
  Unknown,
};

inline std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::SourceUnit: return "SourceUnit";
    case NodeKind::PackageDecl: return "PackageDecl";
    case NodeKind::ImportDecl: return "ImportDecl";
    case NodeKind::ClassDecl: return "ClassDecl";
    case NodeKind::InterfaceDecl: return "InterfaceDecl";
    case NodeKind::FieldDecl: return "FieldDecl";
    case NodeKind::MethodDecl: return "MethodDecl";
    case NodeKind::LocalVarDecl: return "LocalVarDecl";
    case NodeKind::Block: return "Block";
    case NodeKind::ExprStatement: return "ExprStatement";
    case NodeKind::MethodInvocation: return "MethodInvocation";
    case NodeKind::ObjectCreation: return "ObjectCreation";
    case NodeKind::FieldAccess: return "FieldAccess";
    case NodeKind::Identifier: return "Identifier";
    case NodeKind::Literal: return "Literal";
    case NodeKind::ArgumentList: return "ArgumentList";
    case NodeKind::Unknown: return "Unknown";
  }
  return "?";
}

// Named constant such as INFINITE; distinct from a string literal value.
struct EnumConstant {
  std::string name;
  friend bool operator==(const EnumConstant&, const EnumConstant&) = default;
};

using Constant = std::variant<std::int64_t, std::string, EnumConstant>;

struct ImportAttrs {
  std::string path;  // without a trailing ".*"
  bool is_static = false;
  bool is_wildcard = false;
};

// FieldDecl / LocalVarDecl (method parameters are LocalVarDecl too).
struct DeclAttrs {
  std::string type_name;  // simple name, generics and array dims erased
  std::vector<std::string> names;
};

// MethodInvocation / FieldAccess. When the receiver is a plain name chain
// (a, a.b, this.a) it is stored in `qualifier` and no receiver child exists;
// any other receiver expression is the node's first child.
struct MemberAttrs {
  std::optional<std::string> qualifier;
  std::string member;
  bool receiver_child = false;
};

struct LiteralAttrs {
  std::string raw;
  std::optional<Constant> value;
};

// PackageDecl (path), ClassDecl/InterfaceDecl/MethodDecl (name), Identifier,
// ObjectCreation (simple type name), Unknown (construct label).
struct NameAttrs {
  std::string name;
};

using NodeAttrs = std::variant<std::monostate, ImportAttrs, DeclAttrs, MemberAttrs, LiteralAttrs, NameAttrs>;

struct AstNode {
  NodeKind kind = NodeKind::Unknown;
  Span span;
  NodeAttrs attrs;
  std::vector<AstNode> children;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&attrs);
  }

  // Name-like attribute for kinds that carry one; empty otherwise.
  std::string_view name() const {
    if (auto* n = as<NameAttrs>()) return n->name;
    if (auto* m = as<MemberAttrs>()) return m->member;
    if (auto* i = as<ImportAttrs>()) return i->path;
    if (auto* d = as<DeclAttrs>()) return d->type_name;
    if (auto* l = as<LiteralAttrs>()) return l->raw;
    return {};
  }

  std::size_t subtree_size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.subtree_size();
    return n;
  }
};

// Parsed compilation unit; `root.kind` is always NodeKind::SourceUnit.
struct SourceUnit {
  std::string file;
  AstNode root;
};

enum class Severity { fatal, recovered };

struct ParseDiagnostic {
  Span span;
  std::string message;
  Severity severity = Severity::recovered;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

inline std::string_view to_string(Severity s) { return s == Severity::fatal ? "fatal" : "recovered"; }

// Either a unit (possibly with recovered diagnostics) or a fatal diagnostic.
struct ParseResult {
  std::optional<SourceUnit> unit;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return unit.has_value(); }
};

}  // namespace vvd::java
