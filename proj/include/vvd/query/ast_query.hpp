#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vvd/java/ast.hpp"

namespace vvd::query {

using java::AstNode;
using java::Constant;
using java::NodeKind;
using java::SourceUnit;

// Pre-order depth-first enumeration, children in source order.
inline std::vector<const AstNode*> dfs(const SourceUnit& unit) {
  std::vector<const AstNode*> out;
  std::vector<const AstNode*> stack{&unit.root};
  while (!stack.empty()) {
    const AstNode* n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

// File-local, flow-insensitive variable -> declared type map.
struct VarBinding {
  std::map<std::string, std::string, std::less<>> vars;
  // Simple names usable as static-call qualifiers: single-type imports and
  // types declared in the file.
  std::set<std::string, std::less<>> type_names;

  std::optional<std::string> type_of(std::string_view var) const {
    auto it = vars.find(var);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  }
};

inline VarBinding bind_variables(const SourceUnit& unit) {
  VarBinding b;
  for (const AstNode* n : dfs(unit)) {
    switch (n->kind) {
      case NodeKind::LocalVarDecl:
      case NodeKind::FieldDecl: {
        const auto* d = n->as<java::DeclAttrs>();
        for (const auto& name : d->names) b.vars[name] = d->type_name;
        break;
      }
      case NodeKind::ImportDecl: {
        const auto* i = n->as<java::ImportAttrs>();
        if (!i->is_wildcard) {
          auto dot = i->path.rfind('.');
          b.type_names.insert(dot == std::string::npos ? i->path : i->path.substr(dot + 1));
        }
        break;
      }
      case NodeKind::ClassDecl:
      case NodeKind::InterfaceDecl:
        if (!n->name().empty()) b.type_names.emplace(n->name());
        break;
      default:
        break;
    }
  }
  return b;
}

// Static factories T.m(...) whose result is treated as a T receiver when
// chained, e.g. SmsManager.getDefault().sendTextMessage(...).
inline bool is_factory_member(std::string_view m) {
  static constexpr std::string_view names[] = {
      "getDefault", "getInstance", "open",  "create",       "ofFloat",         "ofInt",
      "ofArgb",     "ofObject",    "ofPropertyValuesHolder", "getSmsManagerForSubscriptionId",
  };
  for (auto n : names)
    if (n == m) return true;
  return false;
}

struct Resolution {
  std::string type;
  bool is_static = false;  // the qualifier named a type rather than a variable
};

namespace detail {

inline std::vector<std::string_view> split_dots(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t at = 0;
  for (;;) {
    auto dot = s.find('.', at);
    out.push_back(s.substr(at, dot == std::string_view::npos ? std::string_view::npos : dot - at));
    if (dot == std::string_view::npos) return out;
    at = dot + 1;
  }
}

inline bool looks_like_type(std::string_view name, const VarBinding& b) {
  if (b.type_names.count(name)) return true;
  return !name.empty() && name.front() >= 'A' && name.front() <= 'Z';
}

}  // namespace detail

// Resolves a name-chain qualifier: the last segment as a bound variable
// (so `this.mp` and `holder.mp` resolve through `mp`), otherwise the last
// segment as a type name.
inline std::optional<Resolution> resolve_qualifier(std::string_view qualifier, const VarBinding& b) {
  auto segs = detail::split_dots(qualifier);
  std::string_view last = segs.back();
  if (last == "this" || last == "super") return std::nullopt;
  if (auto t = b.type_of(last)) return Resolution{*t, false};
  if (detail::looks_like_type(last, b)) return Resolution{std::string(last), true};
  return std::nullopt;
}

// Resolves the receiver type of an expression used as a call receiver.
inline std::optional<Resolution> resolve_expression(const AstNode& e, const VarBinding& b) {
  switch (e.kind) {
    case NodeKind::Identifier:
      return resolve_qualifier(e.name(), b);
    case NodeKind::FieldAccess: {
      const auto* m = e.as<java::MemberAttrs>();
      if (m->qualifier) return resolve_qualifier(*m->qualifier + "." + m->member, b);
      if (auto t = b.type_of(m->member)) return Resolution{*t, false};
      return std::nullopt;
    }
    case NodeKind::ObjectCreation:
      return Resolution{std::string(e.name()), false};
    case NodeKind::MethodInvocation: {
      const auto* m = e.as<java::MemberAttrs>();
      std::optional<Resolution> inner;
      if (m->qualifier) {
        inner = resolve_qualifier(*m->qualifier, b);
      } else if (m->receiver_child) {
        inner = resolve_expression(e.children.front(), b);
      }
      if (inner && inner->is_static && is_factory_member(m->member)) return Resolution{inner->type, false};
      return std::nullopt;
    }
    case NodeKind::Unknown: {
      std::string_view label = e.name();
      if (label.starts_with("cast:")) return Resolution{std::string(label.substr(5)), false};
      if (label == "paren" && e.children.size() == 1) return resolve_expression(e.children.front(), b);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

// Receiver type of a MethodInvocation node.
inline std::optional<std::string> receiver_type(const AstNode& call, const VarBinding& b) {
  const auto* m = call.as<java::MemberAttrs>();
  if (!m) return std::nullopt;
  std::optional<Resolution> r;
  if (m->qualifier) {
    r = resolve_qualifier(*m->qualifier, b);
  } else if (m->receiver_child) {
    r = resolve_expression(call.children.front(), b);
  }
  if (!r) return std::nullopt;
  return r->type;
}

// Decodes an expression to a constant: integer literals (underscores and L
// suffix handled), string literals, and the INFINITE repeat-count constant
// spelled bare or qualified by ValueAnimator / ObjectAnimator / Animation.
inline std::optional<Constant> decode_constant(const AstNode& node) {
  switch (node.kind) {
    case NodeKind::Literal:
      return node.as<java::LiteralAttrs>()->value;
    case NodeKind::Identifier:
      if (node.name() == "INFINITE") return java::EnumConstant{"INFINITE"};
      return std::nullopt;
    case NodeKind::FieldAccess: {
      const auto* m = node.as<java::MemberAttrs>();
      if (!m->qualifier || m->member != "INFINITE") return std::nullopt;
      std::string_view owner = detail::split_dots(*m->qualifier).back();
      if (owner == "ValueAnimator" || owner == "ObjectAnimator" || owner == "Animation")
        return java::EnumConstant{"INFINITE"};
      return std::nullopt;
    }
    case NodeKind::Unknown:
      if ((node.name() == "paren" || node.name().starts_with("cast:")) && node.children.size() == 1)
        return decode_constant(node.children.front());
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

struct InvocationSite {
  std::optional<std::string> qualifier;
  std::string member;
  std::vector<std::optional<Constant>> argument_constants;
  std::optional<std::string> receiver_type;
  Span span;
  const AstNode* node = nullptr;
};

using TypePredicate = std::function<bool(std::string_view)>;

inline TypePredicate type_equals(std::string name) {
  return [name = std::move(name)](std::string_view t) { return t == name; };
}

inline TypePredicate type_contains(std::string fragment) {
  return [fragment = std::move(fragment)](std::string_view t) { return t.find(fragment) != std::string_view::npos; };
}

inline TypePredicate any_type() {
  return [](std::string_view) { return true; };
}

// Member-name filter; a default-constructed set matches every member.
class MemberSet {
 public:
  MemberSet() = default;
  MemberSet(std::initializer_list<std::string> names) : names_(std::set<std::string, std::less<>>(names)) {}
  template <typename Range>
  static MemberSet of(const Range& names) {
    MemberSet s;
    s.names_.emplace(std::begin(names), std::end(names));
    return s;
  }
  static MemberSet any() { return {}; }

  bool contains(std::string_view m) const { return !names_ || names_->count(m) > 0; }

 private:
  std::optional<std::set<std::string, std::less<>>> names_;
};

inline InvocationSite make_site(const AstNode& call, const VarBinding& b) {
  const auto* m = call.as<java::MemberAttrs>();
  InvocationSite site;
  site.qualifier = m->qualifier;
  site.member = m->member;
  site.receiver_type = receiver_type(call, b);
  site.span = call.span;
  site.node = &call;
  const AstNode& args = call.children.back();
  for (const auto& a : args.children) site.argument_constants.push_back(decode_constant(a));
  return site;
}

// Invocations whose resolved receiver type satisfies `type_match` (calls
// with an unresolvable receiver never match) and whose member is in
// `members`, in DFS order.
inline std::vector<InvocationSite> find_invocations(const SourceUnit& unit, const VarBinding& b,
                                                    const TypePredicate& type_match, const MemberSet& members) {
  std::vector<InvocationSite> out;
  for (const AstNode* n : dfs(unit)) {
    if (n->kind != NodeKind::MethodInvocation) continue;
    const auto* m = n->as<java::MemberAttrs>();
    if (!members.contains(m->member)) continue;
    auto rt = receiver_type(*n, b);
    if (!rt || !type_match(*rt)) continue;
    out.push_back(make_site(*n, b));
  }
  return out;
}

// Every invocation with the given member name, regardless of receiver.
inline std::vector<InvocationSite> find_member_calls(const SourceUnit& unit, const VarBinding& b,
                                                     const MemberSet& members) {
  std::vector<InvocationSite> out;
  for (const AstNode* n : dfs(unit)) {
    if (n->kind == NodeKind::MethodInvocation && members.contains(n->as<java::MemberAttrs>()->member))
      out.push_back(make_site(*n, b));
  }
  return out;
}

// Imports equal to `prefix` or nested under it at a dot boundary.
inline std::vector<const AstNode*> find_imports(const SourceUnit& unit, std::string_view prefix) {
  std::vector<const AstNode*> out;
  for (const auto& child : unit.root.children) {
    if (child.kind != NodeKind::ImportDecl) continue;
    std::string_view path = child.as<java::ImportAttrs>()->path;
    if (path == prefix || (path.size() > prefix.size() && path.starts_with(prefix) && path[prefix.size()] == '.'))
      out.push_back(&child);
  }
  return out;
}

}  // namespace vvd::query
