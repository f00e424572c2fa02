#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace notional {

// A calendar date, stored as days since 1970-01-01. Dates act as ordered
// labels for market days; no timezone or intraday semantics.
class Date {
public:
    Date() = default;

    // Parses strict ISO-8601 "YYYY-MM-DD". Throws ValidationError otherwise.
    static Date parse(std::string_view iso);
    static Date from_ymd(int year, unsigned month, unsigned day);
    static Date from_serial(long serial) { return Date(serial); }

    std::string to_string() const;

    long serial() const { return serial_; }
    std::chrono::weekday weekday() const;

    // ISO weekday number, Monday = 1 through Sunday = 7.
    unsigned iso_weekday() const { return weekday().iso_encoding(); }

    // Serial of the Monday that starts this date's ISO week. Two dates share
    // a week key exactly when they fall in the same Monday-based week.
    long week_key() const { return serial_ - static_cast<long>(iso_weekday() - 1); }

    Date next_day() const { return Date(serial_ + 1); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    explicit Date(long serial) : serial_(serial) {}
    long serial_ = 0;
};

}  // namespace notional
