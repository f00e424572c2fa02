#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "notional/calendar.hpp"
#include "notional/normalization.hpp"
#include "notional/portfolio.hpp"
#include "notional/price_series.hpp"

namespace notional {

enum class ReturnKind { Compound, Continuous, Linear };

std::string to_string(ReturnKind kind);
ReturnKind parse_return_kind(std::string_view text);

// What a linear return divides by: the alpha-average of the series, or, when
// alpha is absent, the stated level the prices are declared normalized at.
struct LinearDenominator {
    std::optional<AveragingVector> alpha;
    double level = 100.0;

    std::string describe() const { return alpha ? alpha->description() : "as-given"; }
};

// Periodic returns, one column per label, stored as fractions (0.01 = 1%).
class ReturnMatrix {
public:
    ReturnMatrix(PeriodSampler sampler, ReturnKind kind,
                 std::optional<LinearDenominator> denominator, std::vector<std::string> tickers,
                 Eigen::MatrixXd values);

    const PeriodSampler& sampler() const { return sampler_; }
    ReturnKind kind() const { return kind_; }
    const std::optional<LinearDenominator>& denominator() const { return denominator_; }
    const std::vector<std::string>& tickers() const { return tickers_; }
    const Eigen::MatrixXd& values() const { return values_; }
    std::size_t periods() const { return static_cast<std::size_t>(values_.rows()); }
    std::size_t columns() const { return tickers_.size(); }

    // Dates closing each period (length = periods()).
    std::vector<Date> period_end_dates() const { return sampler_.period_end_dates(); }

private:
    PeriodSampler sampler_;
    ReturnKind kind_;
    std::optional<LinearDenominator> denominator_;
    std::vector<std::string> tickers_;
    Eigen::MatrixXd values_;
};

// r_k = x[i_k]/x[i_{k-1}] - 1 over the sampled positions.
Eigen::VectorXd compound_returns(const AdjustedPriceSeries& series, const PeriodSampler& sampler);

// r_k = log(x[i_k]/x[i_{k-1}]).
Eigen::VectorXd continuous_returns(const AdjustedPriceSeries& series, const PeriodSampler& sampler);

// r_k = (x[i_k] - x[i_{k-1}]) / (alpha^T x): the sampled differences of the
// alpha-normalized series divided by its level. The alpha-average runs over
// the full calendar, not only sampled days.
Eigen::VectorXd linear_returns(const AdjustedPriceSeries& series, const PeriodSampler& sampler,
                               const AveragingVector& alpha, double level = 100.0);

// Linear returns for prices already normalized at `level`: sampled
// differences divided by level, no further scaling.
Eigen::VectorXd linear_returns_prenormalized(const AdjustedPriceSeries& series,
                                             const PeriodSampler& sampler, double level = 100.0);

// Applies one return definition to every security column and the portfolio
// series; the portfolio is the last column. Linear kind requires a
// denominator. `securities` may be empty for a portfolio-only matrix.
ReturnMatrix return_matrix(std::span<const AdjustedPriceSeries> securities,
                           const AdjustedPriceSeries& xP, const PeriodSampler& sampler,
                           ReturnKind kind,
                           const std::optional<LinearDenominator>& denominator = std::nullopt);
ReturnMatrix return_matrix(const PriceMatrix& X, const AdjustedPriceSeries& xP,
                           const PeriodSampler& sampler, ReturnKind kind,
                           const std::optional<LinearDenominator>& denominator = std::nullopt);

}  // namespace notional
