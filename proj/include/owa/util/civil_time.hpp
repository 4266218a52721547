#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace owa {

// Proleptic-Gregorian UTC instant with second resolution. xsd:date values
// are represented with the time part zeroed and a flag.
struct CivilTime {
    int year = 1970;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;
    bool date_only = false;

    int64_t epoch_seconds() const;
    friend bool operator==(const CivilTime&, const CivilTime&) = default;
};

bool valid_civil_date(int year, int month, int day);

// Inverse of epoch_seconds()/86400 for midnight instants.
CivilTime civil_from_epoch_days(int64_t days);

// "YYYY-MM-DD"
std::optional<CivilTime> parse_xsd_date(std::string_view s);

// "YYYY-MM-DDThh:mm:ss" with optional fractional seconds (truncated) and
// optional Z / +hh:mm / -hh:mm zone, normalized to UTC. A bare date is
// accepted and promoted to midnight (the query listings mix xsd:date
// lexicals with ^^xsd:dateTime).
std::optional<CivilTime> parse_xsd_datetime(std::string_view s);

// 14-digit YYYYMMDDhhmmss capture timestamp; shorter all-digit strings are
// right-padded with zeros before validation.
std::optional<CivilTime> parse_cdx_timestamp(std::string_view s);

std::string format_xsd_date(const CivilTime& t);
std::string format_xsd_datetime(const CivilTime& t);
std::string format_cdx_timestamp(const CivilTime& t);

}  // namespace owa
