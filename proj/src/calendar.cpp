#include "notional/calendar.hpp"

#include <algorithm>

#include "notional/errors.hpp"

namespace notional {

MarketCalendar::MarketCalendar(std::vector<Date> days) : days_(std::move(days)) {
    if (days_.empty()) throw ValidationError("calendar must contain at least one market day");
    for (std::size_t i = 1; i < days_.size(); ++i) {
        if (!(days_[i - 1] < days_[i]))
            throw ValidationError("calendar dates must be strictly increasing: " +
                                  days_[i - 1].to_string() + " is not before " +
                                  days_[i].to_string());
    }
}

std::optional<std::size_t> MarketCalendar::index_of(Date d) const {
    auto it = std::lower_bound(days_.begin(), days_.end(), d);
    if (it == days_.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - days_.begin());
}

CalendarPtr make_calendar(std::vector<Date> days) {
    return std::make_shared<MarketCalendar>(std::move(days));
}

CalendarPtr make_calendar(std::initializer_list<std::string_view> iso_days) {
    std::vector<Date> days;
    days.reserve(iso_days.size());
    for (auto iso : iso_days) days.push_back(Date::parse(iso));
    return make_calendar(std::move(days));
}

bool same_calendar(const CalendarPtr& a, const CalendarPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

void require_same_calendar(const CalendarPtr& a, const CalendarPtr& b, std::string_view context) {
    if (!same_calendar(a, b))
        throw ValidationError(std::string(context) + ": operands are indexed by different calendars");
}

PeriodSampler::PeriodSampler(CalendarPtr calendar, std::vector<std::size_t> indices)
    : calendar_(std::move(calendar)), indices_(std::move(indices)) {
    if (!calendar_) throw ValidationError("sampler requires a calendar");
    if (indices_.size() < 2)
        throw ValidationError("sampler must select at least two market days (one period)");
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (indices_[k] >= calendar_->size())
            throw ValidationError("sampler position out of calendar bounds");
        if (k > 0 && indices_[k - 1] >= indices_[k])
            throw ValidationError("sampler positions must be strictly increasing");
    }
}

std::vector<Date> PeriodSampler::sampled_dates() const {
    std::vector<Date> out;
    out.reserve(indices_.size());
    for (auto i : indices_) out.push_back((*calendar_)[i]);
    return out;
}

std::vector<Date> PeriodSampler::period_end_dates() const {
    std::vector<Date> out;
    out.reserve(indices_.size() - 1);
    for (std::size_t k = 1; k < indices_.size(); ++k) out.push_back((*calendar_)[indices_[k]]);
    return out;
}

namespace {

std::vector<std::size_t> week_ending_positions(const MarketCalendar& cal) {
    std::vector<std::size_t> out;
    bool have_week = false;
    long current_week = 0;
    bool have_pick = false;
    std::size_t pick = 0;
    auto flush = [&] {
        if (have_pick) out.push_back(pick);
    };
    for (std::size_t i = 0; i < cal.size(); ++i) {
        long week = cal[i].week_key();
        if (!have_week || week != current_week) {
            flush();
            have_week = true;
            current_week = week;
            have_pick = false;
        }
        if (cal[i].iso_weekday() <= 5) {
            pick = i;
            have_pick = true;
        }
    }
    flush();
    return out;
}

}  // namespace

PeriodSampler sample_periodic(const CalendarPtr& calendar, const PeriodRule& rule) {
    if (!calendar) throw ValidationError("sample_periodic requires a calendar");
    std::vector<std::size_t> indices;
    if (std::holds_alternative<EveryDay>(rule)) {
        indices.resize(calendar->size());
        for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    } else if (std::holds_alternative<WeekEnding>(rule)) {
        indices = week_ending_positions(*calendar);
    } else {
        const auto& dates = std::get<ExplicitDates>(rule).dates;
        indices.reserve(dates.size());
        for (const Date& d : dates) {
            auto pos = calendar->index_of(d);
            if (!pos)
                throw ValidationError("sampling date " + d.to_string() + " is not a market day");
            indices.push_back(*pos);
        }
    }
    if (indices.size() < 2)
        throw ValidationError("sampling rule selects fewer than two market days");
    return PeriodSampler(calendar, std::move(indices));
}

}  // namespace notional
