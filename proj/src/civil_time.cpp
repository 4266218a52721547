#include "owa/util/civil_time.hpp"

#include <cstdio>

namespace owa {

static bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

static int days_in_month(int y, int m) {
    static const int base[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return base[m - 1];
}

bool valid_civil_date(int year, int month, int day) {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

// Howard Hinnant's days-from-civil.
static int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

int64_t CivilTime::epoch_seconds() const {
    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

// civil_from_days (Hinnant).
CivilTime civil_from_epoch_days(int64_t days) {
    days += 719468;
    const int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    CivilTime out;
    out.year = y + (m <= 2);
    out.month = static_cast<int>(m);
    out.day = static_cast<int>(d);
    return out;
}

static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

static int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

std::optional<CivilTime> parse_xsd_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!all_digits(s.substr(0, 4)) || !all_digits(s.substr(5, 2)) || !all_digits(s.substr(8, 2)))
        return std::nullopt;
    CivilTime t;
    t.year = to_int(s.substr(0, 4));
    t.month = to_int(s.substr(5, 2));
    t.day = to_int(s.substr(8, 2));
    t.date_only = true;
    if (!valid_civil_date(t.year, t.month, t.day)) return std::nullopt;
    return t;
}

std::optional<CivilTime> parse_xsd_datetime(std::string_view s) {
    if (s.size() == 10) {
        auto d = parse_xsd_date(s);
        if (!d) return std::nullopt;
        d->date_only = false;
        return d;
    }
    if (s.size() < 19 || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;
    auto date = parse_xsd_date(s.substr(0, 10));
    if (!date) return std::nullopt;
    std::string_view rest = s.substr(11);
    if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':') return std::nullopt;
    if (!all_digits(rest.substr(0, 2)) || !all_digits(rest.substr(3, 2)) ||
        !all_digits(rest.substr(6, 2)))
        return std::nullopt;
    CivilTime t = *date;
    t.date_only = false;
    t.hour = to_int(rest.substr(0, 2));
    t.minute = to_int(rest.substr(3, 2));
    t.second = to_int(rest.substr(6, 2));
    if (t.hour > 23 || t.minute > 59 || t.second > 59) return std::nullopt;
    rest = rest.substr(8);
    if (!rest.empty() && rest[0] == '.') {  // fractional seconds, truncated
        size_t i = 1;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
        if (i == 1) return std::nullopt;
        rest = rest.substr(i);
    }
    int offset_min = 0;
    if (!rest.empty()) {
        if (rest == "Z") {
            offset_min = 0;
        } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') && rest[3] == ':' &&
                   all_digits(rest.substr(1, 2)) && all_digits(rest.substr(4, 2))) {
            offset_min = to_int(rest.substr(1, 2)) * 60 + to_int(rest.substr(4, 2));
            if (rest[0] == '-') offset_min = -offset_min;
        } else {
            return std::nullopt;
        }
    }
    if (offset_min == 0) return t;

    // Re-derive civil fields from the shifted epoch (normalize to UTC).
    int64_t secs = t.epoch_seconds() - int64_t(offset_min) * 60;
    int64_t days = secs / 86400;
    int64_t rem = secs % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    CivilTime out = civil_from_epoch_days(days);
    out.hour = static_cast<int>(rem / 3600);
    out.minute = static_cast<int>((rem % 3600) / 60);
    out.second = static_cast<int>(rem % 60);
    return out;
}

std::optional<CivilTime> parse_cdx_timestamp(std::string_view s) {
    if (!all_digits(s) || s.size() > 14 || s.size() < 4) return std::nullopt;
    std::string padded(s);
    padded.resize(14, '0');
    CivilTime t;
    t.year = to_int(std::string_view(padded).substr(0, 4));
    t.month = to_int(std::string_view(padded).substr(4, 2));
    t.day = to_int(std::string_view(padded).substr(6, 2));
    t.hour = to_int(std::string_view(padded).substr(8, 2));
    t.minute = to_int(std::string_view(padded).substr(10, 2));
    t.second = to_int(std::string_view(padded).substr(12, 2));
    if (!valid_civil_date(t.year, t.month, t.day)) return std::nullopt;
    if (t.hour > 23 || t.minute > 59 || t.second > 59) return std::nullopt;
    return t;
}

std::string format_xsd_date(const CivilTime& t) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", t.year, t.month, t.day);
    return buf;
}

std::string format_xsd_datetime(const CivilTime& t) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", t.year, t.month, t.day,
                  t.hour, t.minute, t.second);
    return buf;
}

std::string format_cdx_timestamp(const CivilTime& t) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02d%02d%02d%02d", t.year, t.month, t.day, t.hour,
                  t.minute, t.second);
    return buf;
}

}  // namespace owa
