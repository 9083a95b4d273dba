#include "ocel/timestamp.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace ocel {

namespace {

// Days from 1970-01-01 to year/month/day in the proleptic Gregorian
// calendar (Howard Hinnant's days_from_civil).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool parse_fixed_uint(std::string_view s, std::size_t& pos, int digits, int& out) {
    if (pos + digits > s.size()) return false;
    int value = 0;
    for (int i = 0; i < digits; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    pos += digits;
    out = value;
    return true;
}

bool days_in_month_ok(int y, int m, int d) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    int max_day = lengths[static_cast<std::size_t>(m - 1)];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) max_day = 29;
    return d <= max_day;
}

}  // namespace

std::optional<Timestamp> Timestamp::parse(std::string_view s) {
    std::size_t pos = 0;
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (!parse_fixed_uint(s, pos, 4, year)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!parse_fixed_uint(s, pos, 2, month)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!parse_fixed_uint(s, pos, 2, day)) return std::nullopt;
    if (pos >= s.size() || (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ')) return std::nullopt;
    ++pos;
    if (!parse_fixed_uint(s, pos, 2, hour)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!parse_fixed_uint(s, pos, 2, minute)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!parse_fixed_uint(s, pos, 2, second)) return std::nullopt;

    if (!days_in_month_ok(year, month, day)) return std::nullopt;
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (second == 60) second = 59;  // clamp leap seconds

    int millis = 0;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        int digits = 0;
        std::int64_t frac = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            if (digits < 3) frac = frac * 10 + (s[pos] - '0');
            ++digits;
            ++pos;
        }
        if (digits == 0) return std::nullopt;
        while (digits < 3) {
            frac *= 10;
            ++digits;
        }
        millis = static_cast<int>(frac);
    }

    // offset: Z, +HH:MM, +HHMM, +HH; absent means UTC
    std::int64_t offset_minutes = 0;
    if (pos < s.size()) {
        const char c = s[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            const int sign = c == '+' ? 1 : -1;
            ++pos;
            int oh = 0, om = 0;
            if (!parse_fixed_uint(s, pos, 2, oh)) return std::nullopt;
            if (pos < s.size() && s[pos] == ':') {
                ++pos;
                if (!parse_fixed_uint(s, pos, 2, om)) return std::nullopt;
            } else if (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
                if (!parse_fixed_uint(s, pos, 2, om)) return std::nullopt;
            }
            if (oh > 23 || om > 59) return std::nullopt;
            offset_minutes = sign * (oh * 60 + om);
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    std::int64_t total = days * 86400000LL + hour * 3600000LL + minute * 60000LL +
                         second * 1000LL + millis;
    total -= offset_minutes * 60000LL;
    return Timestamp(total);
}

std::string Timestamp::to_text() const {
    std::int64_t days = millis_ / 86400000LL;
    std::int64_t rem = millis_ % 86400000LL;
    if (rem < 0) {
        rem += 86400000LL;
        --days;
    }
    std::int64_t year = 0;
    unsigned month = 0, day = 0;
    civil_from_days(days, year, month, day);
    const int hour = static_cast<int>(rem / 3600000LL);
    const int minute = static_cast<int>(rem / 60000LL % 60);
    const int second = static_cast<int>(rem / 1000LL % 60);
    const int ms = static_cast<int>(rem % 1000LL);

    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03d+00:00",
                  static_cast<long long>(year), month, day, hour, minute, second, ms);
    return buf;
}

}  // namespace ocel
