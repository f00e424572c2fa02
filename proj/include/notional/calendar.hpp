#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "notional/date.hpp"

namespace notional {

// Ordered, strictly increasing market days. Series, averaging vectors and
// price matrices hold a shared pointer to the calendar they are indexed by.
class MarketCalendar {
public:
    explicit MarketCalendar(std::vector<Date> days);

    std::size_t size() const { return days_.size(); }
    const Date& operator[](std::size_t i) const { return days_[i]; }
    const Date& front() const { return days_.front(); }
    const Date& back() const { return days_.back(); }
    std::span<const Date> days() const { return days_; }

    // Position of `d`, or nullopt when it is not a market day.
    std::optional<std::size_t> index_of(Date d) const;

    bool operator==(const MarketCalendar&) const = default;

private:
    std::vector<Date> days_;
};

using CalendarPtr = std::shared_ptr<const MarketCalendar>;

CalendarPtr make_calendar(std::vector<Date> days);
CalendarPtr make_calendar(std::initializer_list<std::string_view> iso_days);

// True when both point at the same calendar or hold equal day lists.
bool same_calendar(const CalendarPtr& a, const CalendarPtr& b);

// Throws ValidationError naming `context` when the calendars differ.
void require_same_calendar(const CalendarPtr& a, const CalendarPtr& b, std::string_view context);

// Positions i_0 < i_1 < ... < i_m of period-boundary market days. The k-th
// return period runs from day i_{k-1} to day i_k, so m = periods().
class PeriodSampler {
public:
    PeriodSampler(CalendarPtr calendar, std::vector<std::size_t> indices);

    std::size_t periods() const { return indices_.size() - 1; }
    std::span<const std::size_t> indices() const { return indices_; }
    const CalendarPtr& calendar() const { return calendar_; }

    // Dates at the sampled positions (period boundaries, length m+1).
    std::vector<Date> sampled_dates() const;
    // Dates closing each period (positions i_1..i_m, length m).
    std::vector<Date> period_end_dates() const;

private:
    CalendarPtr calendar_;
    std::vector<std::size_t> indices_;
};

struct EveryDay {};
struct WeekEnding {};
struct ExplicitDates {
    std::vector<Date> dates;
};
using PeriodRule = std::variant<EveryDay, WeekEnding, ExplicitDates>;

// every-day: all positions. week-ending: per ISO week, the last market day
// falling on or before Friday (a Friday holiday therefore yields Thursday).
// explicit-date-list: exactly the given dates, which must be market days.
PeriodSampler sample_periodic(const CalendarPtr& calendar, const PeriodRule& rule);

}  // namespace notional
