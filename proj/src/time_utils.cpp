#include "casc/time_utils.hpp"

#include <charconv>
#include <stdexcept>

namespace casc {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

int parse_int_field(std::string_view s, size_t pos, size_t len, const char* what) {
    int value = 0;
    const char* first = s.data() + pos;
    const char* last = first + len;
    for (const char* p = first; p != last; ++p) {
        if (*p < '0' || *p > '9')
            throw std::invalid_argument(std::string("timestamp: non-digit in ") + what);
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw std::invalid_argument(std::string("timestamp: bad ") + what);
    return value;
}

}  // namespace

std::int64_t days_from_civil(int y, int m, int d) {
    // Howard Hinnant's algorithm, shifted so March is month 0 of the era year.
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

UnixTime parse_utc(std::string_view s) {
    // Expected layout: 2010-02-01T09:30:00Z
    if (s.size() != 20)
        throw std::invalid_argument("timestamp: expected YYYY-MM-DDTHH:MM:SSZ, got \"" +
                                    std::string(s) + "\"");
    if (s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' || s[16] != ':' || s[19] != 'Z')
        throw std::invalid_argument("timestamp: bad separators in \"" + std::string(s) + "\"");

    const int year = parse_int_field(s, 0, 4, "year");
    const int month = parse_int_field(s, 5, 2, "month");
    const int day = parse_int_field(s, 8, 2, "day");
    const int hour = parse_int_field(s, 11, 2, "hour");
    const int minute = parse_int_field(s, 14, 2, "minute");
    const int second = parse_int_field(s, 17, 2, "second");

    if (month < 1 || month > 12)
        throw std::invalid_argument("timestamp: month out of range in \"" + std::string(s) + "\"");
    if (day < 1 || day > days_in_month(year, month))
        throw std::invalid_argument("timestamp: day out of range in \"" + std::string(s) + "\"");
    if (hour > 23 || minute > 59 || second > 59)
        throw std::invalid_argument("timestamp: time out of range in \"" + std::string(s) + "\"");

    return days_from_civil(year, month, day) * kSecondsPerDay + hour * 3600 + minute * 60 + second;
}

std::string format_utc(UnixTime t) {
    const std::int64_t day = day_of(t);
    std::int64_t rem = t - day * kSecondsPerDay;
    const CivilDate cd = civil_from_days(day);
    const int hour = static_cast<int>(rem / 3600);
    rem %= 3600;
    const int minute = static_cast<int>(rem / 60);
    const int second = static_cast<int>(rem % 60);

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", cd.year, cd.month, cd.day,
                  hour, minute, second);
    return buf;
}

}  // namespace casc
