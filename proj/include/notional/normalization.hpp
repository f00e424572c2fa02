#pragma once

#include <span>
#include <string>

#include <Eigen/Dense>

#include "notional/calendar.hpp"
#include "notional/price_series.hpp"

namespace notional {

// Nonnegative market-day weights summing to one. The dot product with a price
// series defines the averaging value a normalization divides by.
class AveragingVector {
public:
    AveragingVector(CalendarPtr calendar, Eigen::VectorXd weights, std::string description = "");

    const CalendarPtr& calendar() const { return calendar_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    const std::string& description() const { return description_; }

    // alpha^T x; series must share this vector's calendar.
    double average_of(const AdjustedPriceSeries& series) const;

private:
    CalendarPtr calendar_;
    Eigen::VectorXd weights_;
    std::string description_;
};

// Weight 1 on one market day, 0 elsewhere.
AveragingVector point_mass(const CalendarPtr& calendar, Date date);

// Weight 1/k on each of the k given market days (distinct), 0 elsewhere.
AveragingVector uniform_over(const CalendarPtr& calendar, std::span<const Date> dates);

// x * level / (alpha^T x): scales the series so its alpha-average is `level`.
AdjustedPriceSeries alpha_normalize(const AdjustedPriceSeries& series, const AveragingVector& alpha,
                                    double level = 100.0);

}  // namespace notional
