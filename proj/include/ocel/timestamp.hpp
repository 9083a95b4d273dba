#ifndef OCEL_TIMESTAMP_HPP
#define OCEL_TIMESTAMP_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ocel {

/// A UTC instant with millisecond precision.
///
/// The canonical text form is ISO-8601 with an explicit offset and the
/// millisecond field always printed, e.g. "2023-10-23T08:15:00.000+00:00".
/// Parsing additionally accepts "Z", second precision, offsets without a
/// colon, a space instead of the "T" separator, and fractional seconds of
/// any length (truncated to milliseconds).
class Timestamp {
public:
    Timestamp() = default;
    explicit Timestamp(std::int64_t millis_since_epoch) : millis_(millis_since_epoch) {}

    static Timestamp epoch() { return Timestamp(0); }

    /// Parses the accepted ISO-8601 forms; std::nullopt on anything else.
    static std::optional<Timestamp> parse(std::string_view text);

    std::int64_t millis_since_epoch() const { return millis_; }
    bool is_epoch() const { return millis_ == 0; }

    /// Canonical text form, always UTC ("+00:00") with milliseconds.
    std::string to_text() const;

    auto operator<=>(const Timestamp&) const = default;

private:
    std::int64_t millis_ = 0;
};

}  // namespace ocel

#endif
