#include "ocel/xml.hpp"

#include <charconv>
#include <cstdint>

namespace ocel::xml {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

class Parser {
public:
    explicit Parser(std::string_view doc) : doc_(doc) {}

    Element run() {
        if (doc_.size() >= 3 && doc_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;  // BOM
        skip_misc();
        if (pos_ >= doc_.size() || doc_[pos_] != '<') fail("expected root element");
        Element root = parse_element();
        skip_misc();
        if (pos_ != doc_.size()) fail("content after root element");
        return root;
    }

private:
    std::string_view doc_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < pos_ && i < doc_.size(); ++i) {
            if (doc_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw XmlSyntaxError("xml syntax error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message);
    }

    char peek() const { return pos_ < doc_.size() ? doc_[pos_] : '\0'; }

    bool starts_with(std::string_view prefix) const {
        return doc_.substr(pos_).substr(0, prefix.size()) == prefix;
    }

    void skip_spaces() {
        while (pos_ < doc_.size() && is_space(doc_[pos_])) ++pos_;
    }

    // whitespace, comments, PIs, DOCTYPE between markup
    void skip_misc() {
        for (;;) {
            skip_spaces();
            if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else if (starts_with("<!DOCTYPE")) {
                skip_doctype();
            } else {
                return;
            }
        }
    }

    void skip_comment() {
        pos_ += 4;
        const auto end = doc_.find("-->", pos_);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 3;
    }

    void skip_until(std::string_view terminator) {
        const auto end = doc_.find(terminator, pos_);
        if (end == std::string_view::npos) fail("unterminated markup");
        pos_ = end + terminator.size();
    }

    void skip_doctype() {
        int depth = 0;
        while (pos_ < doc_.size()) {
            const char c = doc_[pos_++];
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == '>' && depth <= 0) return;
        }
        fail("unterminated DOCTYPE");
    }

    std::string parse_name() {
        if (pos_ >= doc_.size() || !is_name_start(doc_[pos_])) fail("expected name");
        const std::size_t start = pos_;
        while (pos_ < doc_.size() && is_name_char(doc_[pos_])) ++pos_;
        return std::string(doc_.substr(start, pos_ - start));
    }

    std::string parse_reference() {
        // on entry pos_ is at '&'
        const auto semi = doc_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 12) fail("unterminated reference");
        const std::string_view body = doc_.substr(pos_ + 1, semi - pos_ - 1);
        pos_ = semi + 1;
        if (body == "amp") return "&";
        if (body == "lt") return "<";
        if (body == "gt") return ">";
        if (body == "apos") return "'";
        if (body == "quot") return "\"";
        if (!body.empty() && body[0] == '#') {
            std::uint32_t cp = 0;
            const char* begin = body.data() + 1;
            const char* end = body.data() + body.size();
            int base = 10;
            if (begin != end && (*begin == 'x' || *begin == 'X')) {
                ++begin;
                base = 16;
            }
            auto [ptr, ec] = std::from_chars(begin, end, cp, base);
            if (ec != std::errc() || ptr != end || cp > 0x10FFFF) fail("bad character reference");
            std::string out;
            append_utf8(out, cp);
            return out;
        }
        fail("unknown entity '&" + std::string(body) + ";'");
    }

    std::string parse_attribute_value() {
        const char quote = peek();
        if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
        ++pos_;
        std::string value;
        while (pos_ < doc_.size()) {
            const char c = doc_[pos_];
            if (c == quote) {
                ++pos_;
                return value;
            }
            if (c == '<') fail("'<' in attribute value");
            if (c == '&') {
                value += parse_reference();
            } else {
                value.push_back(c);
                ++pos_;
            }
        }
        fail("unterminated attribute value");
    }

    Element parse_element() {
        ++pos_;  // consume '<'
        Element element;
        element.name = parse_name();
        for (;;) {
            skip_spaces();
            if (starts_with("/>")) {
                pos_ += 2;
                return element;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string attr_name = parse_name();
            skip_spaces();
            if (peek() != '=') fail("expected '=' after attribute name");
            ++pos_;
            skip_spaces();
            std::string attr_value = parse_attribute_value();
            for (const auto& [existing, _] : element.attributes)
                if (existing == attr_name) fail("duplicate attribute '" + attr_name + "'");
            element.attributes.emplace_back(std::move(attr_name), std::move(attr_value));
        }
        parse_content(element);
        return element;
    }

    void parse_content(Element& element) {
        for (;;) {
            if (pos_ >= doc_.size()) fail("unterminated element '" + element.name + "'");
            const char c = doc_[pos_];
            if (c == '<') {
                if (starts_with("</")) {
                    pos_ += 2;
                    const std::string name = parse_name();
                    if (name != element.name)
                        fail("mismatched close tag '" + name + "' for '" + element.name + "'");
                    skip_spaces();
                    if (peek() != '>') fail("expected '>'");
                    ++pos_;
                    return;
                }
                if (starts_with("<!--")) {
                    skip_comment();
                } else if (starts_with("<![CDATA[")) {
                    pos_ += 9;
                    const auto end = doc_.find("]]>", pos_);
                    if (end == std::string_view::npos) fail("unterminated CDATA");
                    element.text.append(doc_.substr(pos_, end - pos_));
                    pos_ = end + 3;
                } else if (starts_with("<?")) {
                    skip_until("?>");
                } else {
                    element.children.push_back(parse_element());
                }
            } else if (c == '&') {
                element.text += parse_reference();
            } else {
                element.text.push_back(c);
                ++pos_;
            }
        }
    }
};

void escape_into(std::string& out, std::string_view s, bool attribute) {
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"':
                if (attribute)
                    out += "&quot;";
                else
                    out.push_back(c);
                break;
            case '\t':
                if (attribute)
                    out += "&#9;";
                else
                    out.push_back(c);
                break;
            case '\n':
                if (attribute)
                    out += "&#10;";
                else
                    out.push_back(c);
                break;
            case '\r': out += "&#13;"; break;
            default: out.push_back(c); break;
        }
    }
}

void serialize_into(std::string& out, const Element& element, int depth) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out.push_back('<');
    out += element.name;
    for (const auto& [name, value] : element.attributes) {
        out.push_back(' ');
        out += name;
        out += "=\"";
        escape_into(out, value, true);
        out.push_back('"');
    }
    if (element.children.empty() && element.text.empty()) {
        out += "/>\n";
        return;
    }
    if (element.children.empty()) {
        out.push_back('>');
        escape_into(out, element.text, false);
        out += "</";
        out += element.name;
        out += ">\n";
        return;
    }
    out += ">\n";
    for (const auto& child : element.children) serialize_into(out, child, depth + 1);
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "</";
    out += element.name;
    out += ">\n";
}

}  // namespace

Element parse(std::string_view document) {
    return Parser(document).run();
}

std::string escape_text(std::string_view s) {
    std::string out;
    escape_into(out, s, false);
    return out;
}

std::string escape_attribute(std::string_view s) {
    std::string out;
    escape_into(out, s, true);
    return out;
}

std::string serialize(const Element& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    serialize_into(out, root, 0);
    return out;
}

}  // namespace ocel::xml
