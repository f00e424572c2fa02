#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "notional/calendar.hpp"
#include "notional/normalization.hpp"
#include "notional/price_series.hpp"

namespace notional {

// Adjusted closing prices of n securities over one calendar, one column per
// security. Column independence is checked where an operation requires it.
class PriceMatrix {
public:
    explicit PriceMatrix(const std::vector<AdjustedPriceSeries>& columns);
    PriceMatrix(CalendarPtr calendar, std::vector<std::string> tickers, Eigen::MatrixXd values);

    const CalendarPtr& calendar() const { return calendar_; }
    const std::vector<std::string>& tickers() const { return tickers_; }
    const Eigen::MatrixXd& values() const { return values_; }
    std::size_t securities() const { return tickers_.size(); }
    std::size_t days() const { return static_cast<std::size_t>(values_.rows()); }

    AdjustedPriceSeries column(std::size_t j) const;

private:
    CalendarPtr calendar_;
    std::vector<std::string> tickers_;
    Eigen::MatrixXd values_;
};

// Fixed share counts defining a static portfolio: nonnegative, not all zero.
class NotionalShares {
public:
    NotionalShares(Eigen::VectorXd shares, std::vector<std::string> tickers);

    const Eigen::VectorXd& shares() const { return shares_; }
    const std::vector<std::string>& tickers() const { return tickers_; }
    std::size_t size() const { return tickers_.size(); }

private:
    Eigen::VectorXd shares_;
    std::vector<std::string> tickers_;
};

// Value proportions of a portfolio under a stated normalization: nonnegative,
// summing to one.
class NotionalPortfolio {
public:
    NotionalPortfolio(Eigen::VectorXd proportions, std::vector<std::string> tickers,
                      std::string normalization = "");

    const Eigen::VectorXd& proportions() const { return proportions_; }
    const std::vector<std::string>& tickers() const { return tickers_; }
    const std::string& normalization() const { return normalization_; }
    std::size_t size() const { return tickers_.size(); }

    // Sum of the raw least-squares solution before cleanup. Exactly 1 for
    // directly constructed portfolios; a deviation beyond ~1e-6 flags inputs
    // that were not genuinely normalized to a common level.
    double recovered_sum() const { return recovered_sum_; }

private:
    friend NotionalPortfolio notional_portfolio(const PriceMatrix&, const AdjustedPriceSeries&,
                                                std::string);
    Eigen::VectorXd proportions_;
    std::vector<std::string> tickers_;
    std::string normalization_;
    double recovered_sum_ = 1.0;
};

// Day-by-day value proportions of each security within the portfolio; one row
// per market day, each row nonnegative and summing to one.
class ClosingPortfolioMatrix {
public:
    ClosingPortfolioMatrix(CalendarPtr calendar, std::vector<std::string> tickers,
                           Eigen::MatrixXd rows);

    const CalendarPtr& calendar() const { return calendar_; }
    const std::vector<std::string>& tickers() const { return tickers_; }
    const Eigen::MatrixXd& values() const { return values_; }

private:
    CalendarPtr calendar_;
    std::vector<std::string> tickers_;
    Eigen::MatrixXd values_;
};

// x_P = X s: the portfolio's adjusted price series for fixed share counts.
AdjustedPriceSeries synthesize(const PriceMatrix& X, const NotionalShares& s,
                               std::string label = "PORTF");

// Row i is (X[i,j] s_j) / x_P[i]: where the portfolio's value sat on day i.
ClosingPortfolioMatrix closing_portfolios(const PriceMatrix& X, const NotionalShares& s);

// Recovers the proportions p with X_alpha p ~= xP_alpha by least squares.
// For inputs normalized to a common level the solution sums to 1 on its own;
// recovered_sum() preserves the raw sum for diagnostics. Small negative
// components (above -1e-4, e.g. rounded input noise) are clamped to zero and
// the vector renormalized; anything more negative is rejected as not
// long-only. Rank-deficient X_alpha raises NumericalError.
NotionalPortfolio notional_portfolio(const PriceMatrix& X_alpha,
                                     const AdjustedPriceSeries& xP_alpha,
                                     std::string normalization = "");

// Re-expresses proportions under averaging vector beta:
// p_beta[j] = (beta^T x_j / beta^T x_P) * p_alpha[j], renormalized to sum 1.
NotionalPortfolio convert_portfolio(const NotionalPortfolio& p_alpha, const PriceMatrix& X_alpha,
                                    const AdjustedPriceSeries& xP_alpha,
                                    const AveragingVector& beta);

}  // namespace notional
