#include "ocel/value.hpp"

#include <charconv>

namespace ocel {

std::string_view to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::String: return "string";
        case ValueKind::Integer: return "integer";
        case ValueKind::Float: return "float";
        case ValueKind::Boolean: return "boolean";
        case ValueKind::Timestamp: return "time";
    }
    return "string";
}

std::optional<ValueKind> parse_value_kind(std::string_view text) {
    if (text == "string") return ValueKind::String;
    if (text == "integer") return ValueKind::Integer;
    if (text == "float") return ValueKind::Float;
    if (text == "boolean") return ValueKind::Boolean;
    if (text == "time" || text == "timestamp" || text == "date") return ValueKind::Timestamp;
    return std::nullopt;
}

std::string AttributeValue::to_text() const {
    switch (kind()) {
        case ValueKind::String: return as_string();
        case ValueKind::Integer: {
            char buf[24];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), as_integer());
            return std::string(buf, ptr);
        }
        case ValueKind::Float: return float_to_text(as_float());
        case ValueKind::Boolean: return as_boolean() ? "true" : "false";
        case ValueKind::Timestamp: return as_timestamp().to_text();
    }
    return {};
}

std::string float_to_text(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::optional<double> float_from_text(std::string_view text) {
    // trim ASCII whitespace so padded storage values still convert
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' ||
                             text.front() == '\n' || text.front() == '\r'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                             text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (*begin == '+') ++begin;  // from_chars rejects leading '+'
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::optional<std::int64_t> integer_from_text(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' ||
                             text.front() == '\n' || text.front() == '\r'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                             text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.empty()) return std::nullopt;
    std::int64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

}  // namespace ocel
