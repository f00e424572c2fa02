#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "notional/calendar.hpp"

namespace notional {

// One security's raw closing prices, aligned with a market-day calendar.
class RawCloseSeries {
public:
    RawCloseSeries(CalendarPtr calendar, Eigen::VectorXd closes);

    const CalendarPtr& calendar() const { return calendar_; }
    const Eigen::VectorXd& closes() const { return closes_; }
    std::size_t size() const { return static_cast<std::size_t>(closes_.size()); }

private:
    CalendarPtr calendar_;
    Eigen::VectorXd closes_;
};

enum class ActionKind { CashDividend, ShareDividend, Split };

// A dividend or split taking effect on ex_date. amount is the cash dividend
// per share, the share dividend per share, or the split ratio respectively.
struct CorporateAction {
    Date ex_date;
    ActionKind kind;
    double amount = 0.0;
};

// One security's positive adjusted closing prices.
class AdjustedPriceSeries {
public:
    AdjustedPriceSeries(CalendarPtr calendar, Eigen::VectorXd prices, std::string label = "");

    const CalendarPtr& calendar() const { return calendar_; }
    const Eigen::VectorXd& prices() const { return prices_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return static_cast<std::size_t>(prices_.size()); }
    double operator[](std::size_t i) const { return prices_[static_cast<Eigen::Index>(i)]; }

private:
    CalendarPtr calendar_;
    Eigen::VectorXd prices_;
    std::string label_;
};

// Builds adjusted prices from raw closes and corporate actions. The adjusted
// ratio across ordinary days is c_i/c_{i-1}; a cash dividend d makes it
// c_i/(c_{i-1}-d), a share dividend s makes it (1+s)c_i/c_{i-1}, and a split
// tau makes it tau*c_i/c_{i-1}. Same-day actions of distinct kinds compose in
// the order cash, share, split. The series is pinned to anchor_value at the
// anchor position: ratios multiply forward from there and divide backward.
AdjustedPriceSeries adjust(const RawCloseSeries& raw, std::span<const CorporateAction> actions,
                           std::size_t anchor, double anchor_value, std::string label = "");

// Multiplies every entry by lambda > 0; same calendar and label.
AdjustedPriceSeries rescale(const AdjustedPriceSeries& series, double lambda);

}  // namespace notional
