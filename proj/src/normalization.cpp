#include "notional/normalization.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "notional/errors.hpp"

namespace notional {

AveragingVector::AveragingVector(CalendarPtr calendar, Eigen::VectorXd weights,
                                 std::string description)
    : calendar_(std::move(calendar)),
      weights_(std::move(weights)),
      description_(std::move(description)) {
    if (!calendar_) throw ValidationError("averaging vector requires a calendar");
    if (static_cast<std::size_t>(weights_.size()) != calendar_->size())
        throw ValidationError("averaging vector length does not match its calendar");
    for (Eigen::Index i = 0; i < weights_.size(); ++i) {
        if (!std::isfinite(weights_[i]) || weights_[i] < 0.0)
            throw ValidationError("averaging weights must be nonnegative");
    }
    if (std::abs(weights_.sum() - 1.0) > 1e-12)
        throw ValidationError("averaging weights must sum to 1");
}

double AveragingVector::average_of(const AdjustedPriceSeries& series) const {
    require_same_calendar(calendar_, series.calendar(), "averaging");
    return weights_.dot(series.prices());
}

AveragingVector point_mass(const CalendarPtr& calendar, Date date) {
    if (!calendar) throw ValidationError("point_mass requires a calendar");
    auto pos = calendar->index_of(date);
    if (!pos) throw ValidationError("averaging date " + date.to_string() + " is not a market day");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(calendar->size()));
    w[static_cast<Eigen::Index>(*pos)] = 1.0;
    return AveragingVector(calendar, std::move(w), "point-mass " + date.to_string());
}

AveragingVector uniform_over(const CalendarPtr& calendar, std::span<const Date> dates) {
    if (!calendar) throw ValidationError("uniform_over requires a calendar");
    if (dates.empty()) throw ValidationError("uniform averaging needs at least one date");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(calendar->size()));
    std::set<Date> seen;
    for (const Date& d : dates) {
        if (!seen.insert(d).second)
            throw ValidationError("duplicate averaging date " + d.to_string());
        auto pos = calendar->index_of(d);
        if (!pos) throw ValidationError("averaging date " + d.to_string() + " is not a market day");
        w[static_cast<Eigen::Index>(*pos)] = 1.0;
    }
    w /= static_cast<double>(dates.size());
    std::string desc = "uniform-over";
    for (const Date& d : dates) desc += " " + d.to_string();
    return AveragingVector(calendar, std::move(w), desc);
}

AdjustedPriceSeries alpha_normalize(const AdjustedPriceSeries& series, const AveragingVector& alpha,
                                    double level) {
    require_same_calendar(series.calendar(), alpha.calendar(), "normalization");
    if (!(level > 0.0) || !std::isfinite(level))
        throw ValidationError("normalization level must be positive");
    double average = alpha.weights().dot(series.prices());
    return AdjustedPriceSeries(series.calendar(), series.prices() * (level / average),
                               series.label());
}

}  // namespace notional
