#ifndef OCEL_VALUE_HPP
#define OCEL_VALUE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ocel/timestamp.hpp"

namespace ocel {

/// The five attribute value domains shared by all storage variants.
enum class ValueKind { String, Integer, Float, Boolean, Timestamp };

/// Storage-format spelling of a kind ("string", "integer", "float",
/// "boolean", "time").
std::string_view to_string(ValueKind kind);
std::optional<ValueKind> parse_value_kind(std::string_view text);

/// Tagged scalar carried by event attributes and object snapshots.
class AttributeValue {
public:
    AttributeValue() : value_(std::string()) {}
    explicit AttributeValue(std::string v) : value_(std::move(v)) {}
    explicit AttributeValue(const char* v) : value_(std::string(v)) {}
    explicit AttributeValue(std::int64_t v) : value_(v) {}
    explicit AttributeValue(double v) : value_(v) {}
    explicit AttributeValue(bool v) : value_(v) {}
    explicit AttributeValue(Timestamp v) : value_(v) {}

    ValueKind kind() const {
        switch (value_.index()) {
            case 0: return ValueKind::String;
            case 1: return ValueKind::Integer;
            case 2: return ValueKind::Float;
            case 3: return ValueKind::Boolean;
            default: return ValueKind::Timestamp;
        }
    }

    const std::string& as_string() const { return std::get<std::string>(value_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    double as_float() const { return std::get<double>(value_); }
    bool as_boolean() const { return std::get<bool>(value_); }
    Timestamp as_timestamp() const { return std::get<Timestamp>(value_); }

    /// Plain text form: the value as it appears in the XML variant.
    /// Floats use shortest round-trip notation, booleans "true"/"false",
    /// timestamps their canonical text.
    std::string to_text() const;

    bool operator==(const AttributeValue&) const = default;

private:
    std::variant<std::string, std::int64_t, double, bool, Timestamp> value_;
};

/// Shortest decimal text that parses back to exactly the same double.
std::string float_to_text(double value);
std::optional<double> float_from_text(std::string_view text);
std::optional<std::int64_t> integer_from_text(std::string_view text);

}  // namespace ocel

#endif
