#include "notional/date.hpp"

#include <charconv>
#include <cstdio>

#include "notional/errors.hpp"

namespace notional {

namespace {

unsigned parse_component(std::string_view text, std::string_view original) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("invalid date '" + std::string(original) + "': expected YYYY-MM-DD");
    return value;
}

}  // namespace

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw ValidationError("invalid date '" + std::string(iso) + "': expected YYYY-MM-DD");
    unsigned y = parse_component(iso.substr(0, 4), iso);
    unsigned m = parse_component(iso.substr(5, 2), iso);
    unsigned d = parse_component(iso.substr(8, 2), iso);
    return from_ymd(static_cast<int>(y), m, d);
}

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    if (!ymd.ok()) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
        throw ValidationError(std::string("invalid date '") + buf + "': no such calendar day");
    }
    return Date(std::chrono::sys_days{ymd}.time_since_epoch().count());
}

std::string Date::to_string() const {
    std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{serial_}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::chrono::weekday Date::weekday() const {
    return std::chrono::weekday{std::chrono::sys_days{std::chrono::days{serial_}}};
}

}  // namespace notional
