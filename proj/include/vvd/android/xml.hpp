#pragma once

#include <expat.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vvd/errors.hpp"

namespace vvd::android {

inline std::string_view local_name(std::string_view qname) {
  auto colon = qname.rfind(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

struct XmlElement {
  std::string tag;  // qualified name as written
  std::vector<std::pair<std::string, std::string>> attributes;
  int line = 1;
  int col = 1;
  std::vector<XmlElement> children;

  std::string_view local_tag() const { return local_name(tag); }

  // Attribute value by local name, ignoring any namespace prefix.
  std::optional<std::string> attr(std::string_view local) const {
    for (const auto& [k, v] : attributes)
      if (local_name(k) == local) return v;
    return std::nullopt;
  }
};

namespace detail {

struct ExpatBuilder {
  XML_Parser parser = nullptr;
  std::vector<XmlElement*> stack;
  std::optional<XmlElement> root;

  static void on_start(void* self, const XML_Char* name, const XML_Char** atts) {
    auto* b = static_cast<ExpatBuilder*>(self);
    XmlElement e;
    e.tag = name;
    e.line = static_cast<int>(XML_GetCurrentLineNumber(b->parser));
    e.col = static_cast<int>(XML_GetCurrentColumnNumber(b->parser)) + 1;
    for (int i = 0; atts[i]; i += 2) e.attributes.emplace_back(atts[i], atts[i + 1]);
    if (b->stack.empty()) {
      b->root = std::move(e);
      b->stack.push_back(&*b->root);
    } else {
      auto& kids = b->stack.back()->children;
      kids.push_back(std::move(e));
      b->stack.push_back(&kids.back());
    }
  }

  static void on_end(void* self, const XML_Char*) { static_cast<ExpatBuilder*>(self)->stack.pop_back(); }
};

}  // namespace detail

// Parses a well-formed XML document into an element tree. Throws XmlError
// with the reader's position on malformed input.
inline XmlElement parse_xml(std::string_view text) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                                       &XML_ParserFree);
  if (!parser) throw XmlError(0, 0, "cannot allocate XML parser");
  detail::ExpatBuilder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &detail::ExpatBuilder::on_start, &detail::ExpatBuilder::on_end);
  if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) == XML_STATUS_ERROR) {
    throw XmlError(static_cast<int>(XML_GetCurrentLineNumber(parser.get())),
                   static_cast<int>(XML_GetCurrentColumnNumber(parser.get())) + 1,
                   XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!builder.root) throw XmlError(1, 1, "no root element");
  return std::move(*builder.root);
}

}  // namespace vvd::android
