#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "casc/time_utils.hpp"

using namespace casc;

TEST_CASE("parse and format round-trip") {
    const char* samples[] = {"2010-02-01T09:30:00Z", "1970-01-01T00:00:00Z",
                             "2000-02-29T23:59:59Z", "2010-07-01T00:00:00Z",
                             "1969-12-31T23:59:59Z"};
    for (const char* s : samples) CHECK(format_utc(parse_utc(s)) == s);
}

TEST_CASE("known epoch values") {
    CHECK(parse_utc("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_utc("1970-01-02T00:00:00Z") == 86400);
    CHECK(parse_utc("2010-02-01T09:30:00Z") == 1265016600);
}

TEST_CASE("rejects malformed timestamps") {
    CHECK_THROWS_AS(parse_utc("2010-02-01 09:30:00Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_utc("2010-02-01T09:30:00"), std::invalid_argument);
    CHECK_THROWS_AS(parse_utc("2010-13-01T09:30:00Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_utc("2010-02-29T09:30:00Z"), std::invalid_argument);  // not a leap year
    CHECK_THROWS_AS(parse_utc("2010-02-01T24:00:00Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_utc("2010-02-0aT09:30:00Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_utc(""), std::invalid_argument);
}

TEST_CASE("weekday") {
    // 1970-01-01 was a Thursday; 2010-02-01 a Monday; 2010-02-06 a Saturday.
    CHECK(weekday_of(parse_utc("1970-01-01T12:00:00Z")) == 3);
    CHECK(weekday_of(parse_utc("2010-02-01T00:00:00Z")) == 0);
    CHECK(weekday_of(parse_utc("2010-02-06T23:59:59Z")) == 5);
    CHECK(weekday_of(parse_utc("2010-02-07T10:00:00Z")) == 6);
}

TEST_CASE("civil date round-trip across leap years") {
    for (std::int64_t day = -1000; day <= 20000; day += 13) {
        const CivilDate cd = civil_from_days(day);
        CHECK(days_from_civil(cd.year, cd.month, cd.day) == day);
    }
}
