#include "notional/price_series.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "notional/errors.hpp"

namespace notional {

namespace {

void check_finite_positive(const Eigen::VectorXd& v, std::string_view what) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] <= 0.0)
            throw ValidationError(std::string(what) + " must be positive and finite (entry " +
                                  std::to_string(i) + " is " + std::to_string(v[i]) + ")");
    }
}

}  // namespace

RawCloseSeries::RawCloseSeries(CalendarPtr calendar, Eigen::VectorXd closes)
    : calendar_(std::move(calendar)), closes_(std::move(closes)) {
    if (!calendar_) throw ValidationError("close series requires a calendar");
    if (static_cast<std::size_t>(closes_.size()) != calendar_->size())
        throw ValidationError("close series length does not match its calendar");
    check_finite_positive(closes_, "closing prices");
}

AdjustedPriceSeries::AdjustedPriceSeries(CalendarPtr calendar, Eigen::VectorXd prices,
                                         std::string label)
    : calendar_(std::move(calendar)), prices_(std::move(prices)), label_(std::move(label)) {
    if (!calendar_) throw ValidationError("price series requires a calendar");
    if (static_cast<std::size_t>(prices_.size()) != calendar_->size())
        throw ValidationError("price series length does not match its calendar");
    check_finite_positive(prices_, "adjusted prices");
}

AdjustedPriceSeries adjust(const RawCloseSeries& raw, std::span<const CorporateAction> actions,
                           std::size_t anchor, double anchor_value, std::string label) {
    const auto& cal = *raw.calendar();
    const auto& c = raw.closes();
    const auto n = static_cast<std::size_t>(c.size());
    if (anchor >= n) throw ValidationError("anchor position out of bounds");
    if (!(anchor_value > 0.0) || !std::isfinite(anchor_value))
        throw ValidationError("anchor value must be positive");

    // Per-day action multipliers, keyed by calendar position.
    std::map<std::size_t, std::map<ActionKind, double>> by_day;
    for (const auto& a : actions) {
        auto pos = cal.index_of(a.ex_date);
        if (!pos)
            throw ValidationError("corporate action ex-date " + a.ex_date.to_string() +
                                  " is not a market day");
        if (*pos == 0)
            throw ValidationError("corporate action ex-date " + a.ex_date.to_string() +
                                  " has no prior market day to adjust against");
        auto [it, inserted] = by_day[*pos].emplace(a.kind, a.amount);
        if (!inserted)
            throw ValidationError("conflicting corporate actions of the same kind on " +
                                  a.ex_date.to_string());
        switch (a.kind) {
            case ActionKind::CashDividend:
                if (a.amount < 0.0) throw ValidationError("cash dividend must be nonnegative");
                break;
            case ActionKind::ShareDividend:
                if (!(a.amount > -1.0))
                    throw ValidationError("share dividend must exceed -1 share per share");
                break;
            case ActionKind::Split:
                if (!(a.amount > 0.0)) throw ValidationError("split ratio must be positive");
                break;
        }
    }

    // ratio[i] moves day i-1 to day i: ordinary c_i/c_{i-1}, with dividend,
    // share-dividend and split factors folded in (cash, then share, then split).
    Eigen::VectorXd ratio(c.size());
    ratio[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        double denom = c[static_cast<Eigen::Index>(i - 1)];
        double factor = 1.0;
        if (auto day = by_day.find(i); day != by_day.end()) {
            if (auto cash = day->second.find(ActionKind::CashDividend); cash != day->second.end()) {
                if (cash->second >= denom)
                    throw ValidationError("cash dividend of " + std::to_string(cash->second) +
                                          " on " + cal[i].to_string() +
                                          " is not below the prior close " + std::to_string(denom));
                denom -= cash->second;
            }
            if (auto share = day->second.find(ActionKind::ShareDividend);
                share != day->second.end())
                factor *= 1.0 + share->second;
            if (auto split = day->second.find(ActionKind::Split); split != day->second.end())
                factor *= split->second;
        }
        ratio[static_cast<Eigen::Index>(i)] = factor * c[static_cast<Eigen::Index>(i)] / denom;
    }

    Eigen::VectorXd x(c.size());
    x[static_cast<Eigen::Index>(anchor)] = anchor_value;
    for (std::size_t i = anchor + 1; i < n; ++i)
        x[static_cast<Eigen::Index>(i)] =
            x[static_cast<Eigen::Index>(i - 1)] * ratio[static_cast<Eigen::Index>(i)];
    for (std::size_t i = anchor; i > 0; --i)
        x[static_cast<Eigen::Index>(i - 1)] =
            x[static_cast<Eigen::Index>(i)] / ratio[static_cast<Eigen::Index>(i)];
    return AdjustedPriceSeries(raw.calendar(), std::move(x), std::move(label));
}

AdjustedPriceSeries rescale(const AdjustedPriceSeries& series, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ValidationError("rescale factor must be positive");
    return AdjustedPriceSeries(series.calendar(), series.prices() * lambda, series.label());
}

}  // namespace notional
