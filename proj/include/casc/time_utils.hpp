#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace casc {

// Seconds since the Unix epoch, UTC. All timestamps in the toolkit use this.
using UnixTime = std::int64_t;

constexpr std::int64_t kSecondsPerDay = 86400;

// Parses a strict ISO-8601 UTC timestamp of the form YYYY-MM-DDTHH:MM:SSZ.
// Throws std::invalid_argument on any format or calendar violation.
UnixTime parse_utc(std::string_view text);

// Formats as YYYY-MM-DDTHH:MM:SSZ.
std::string format_utc(UnixTime t);

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, int month, int day);

struct CivilDate {
    int year;
    int month;  // 1..12
    int day;    // 1..31
};

CivilDate civil_from_days(std::int64_t days);

// Floor division so pre-epoch timestamps still land on the right day.
inline std::int64_t day_of(UnixTime t) {
    std::int64_t d = t / kSecondsPerDay;
    if (t % kSecondsPerDay < 0) --d;
    return d;
}

// 0 = Monday ... 6 = Sunday. 1970-01-01 was a Thursday.
inline int weekday_of_day(std::int64_t day) {
    std::int64_t w = (day + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

inline int weekday_of(UnixTime t) { return weekday_of_day(day_of(t)); }

}  // namespace casc
