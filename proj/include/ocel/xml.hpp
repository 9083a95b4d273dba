#ifndef OCEL_XML_HPP
#define OCEL_XML_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ocel/errors.hpp"

namespace ocel::xml {

/// Minimal XML element tree: names, attributes, child elements, and the
/// concatenated character data directly inside the element. Comments,
/// processing instructions, and the prolog are discarded while parsing;
/// CDATA sections and entity/character references are decoded into text.
struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::string text;

    const std::string* find_attribute(std::string_view attr_name) const {
        for (const auto& [k, v] : attributes)
            if (k == attr_name) return &v;
        return nullptr;
    }

    const Element* find_child(std::string_view child_name) const {
        for (const auto& c : children)
            if (c.name == child_name) return &c;
        return nullptr;
    }
};

/// Parses one document; throws XmlSyntaxError with line/column context.
Element parse(std::string_view document);

/// Escapes &, <, > (text and attributes), plus ", TAB, LF and CR in
/// attribute values so they survive attribute-value normalization.
std::string escape_text(std::string_view s);
std::string escape_attribute(std::string_view s);

/// Serializes with 2-space indentation, one element per line, childless
/// elements self-closed. `text` is only honored on leaf elements.
std::string serialize(const Element& root);

}  // namespace ocel::xml

#endif
