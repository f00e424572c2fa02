#include "notional/portfolio.hpp"

#include <cmath>
#include <utility>

#include <Eigen/SVD>

#include "notional/errors.hpp"

namespace notional {

namespace {

constexpr double kRankTolerance = 1e-8;
// Recovered proportions this far below zero still count as numerical noise
// (one hundredth of a percentage point); they are clamped and renormalized.
constexpr double kNegativeProportionTolerance = 1e-4;

void check_dims(const PriceMatrix& X, std::size_t count, std::string_view what) {
    if (X.securities() != count)
        throw ValidationError(std::string(what) + ": expected " + std::to_string(X.securities()) +
                              " entries, got " + std::to_string(count));
}

}  // namespace

PriceMatrix::PriceMatrix(const std::vector<AdjustedPriceSeries>& columns) {
    if (columns.empty()) throw ValidationError("price matrix needs at least one security");
    calendar_ = columns.front().calendar();
    values_.resize(static_cast<Eigen::Index>(calendar_->size()),
                   static_cast<Eigen::Index>(columns.size()));
    tickers_.reserve(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        require_same_calendar(calendar_, columns[j].calendar(), "price matrix");
        values_.col(static_cast<Eigen::Index>(j)) = columns[j].prices();
        tickers_.push_back(columns[j].label());
    }
}

PriceMatrix::PriceMatrix(CalendarPtr calendar, std::vector<std::string> tickers,
                         Eigen::MatrixXd values)
    : calendar_(std::move(calendar)), tickers_(std::move(tickers)), values_(std::move(values)) {
    if (!calendar_) throw ValidationError("price matrix requires a calendar");
    if (tickers_.empty()) throw ValidationError("price matrix needs at least one security");
    if (static_cast<std::size_t>(values_.rows()) != calendar_->size() ||
        static_cast<std::size_t>(values_.cols()) != tickers_.size())
        throw ValidationError("price matrix shape does not match calendar and tickers");
    for (Eigen::Index i = 0; i < values_.rows(); ++i)
        for (Eigen::Index j = 0; j < values_.cols(); ++j)
            if (!std::isfinite(values_(i, j)) || values_(i, j) <= 0.0)
                throw ValidationError("price matrix entries must be positive (" + tickers_[j] +
                                      " on " + (*calendar_)[i].to_string() + ")");
}

AdjustedPriceSeries PriceMatrix::column(std::size_t j) const {
    if (j >= tickers_.size()) throw ValidationError("security index out of range");
    return AdjustedPriceSeries(calendar_, values_.col(static_cast<Eigen::Index>(j)), tickers_[j]);
}

NotionalShares::NotionalShares(Eigen::VectorXd shares, std::vector<std::string> tickers)
    : shares_(std::move(shares)), tickers_(std::move(tickers)) {
    if (static_cast<std::size_t>(shares_.size()) != tickers_.size())
        throw ValidationError("share vector and ticker list differ in length");
    if (tickers_.empty()) throw ValidationError("share vector must be nonempty");
    double total = 0.0;
    for (Eigen::Index j = 0; j < shares_.size(); ++j) {
        if (!std::isfinite(shares_[j]) || shares_[j] < 0.0)
            throw ValidationError("notional shares must be nonnegative (" + tickers_[j] + ")");
        total += shares_[j];
    }
    if (!(total > 0.0)) throw ValidationError("at least one notional share must be positive");
}

NotionalPortfolio::NotionalPortfolio(Eigen::VectorXd proportions, std::vector<std::string> tickers,
                                     std::string normalization)
    : proportions_(std::move(proportions)),
      tickers_(std::move(tickers)),
      normalization_(std::move(normalization)) {
    if (static_cast<std::size_t>(proportions_.size()) != tickers_.size())
        throw ValidationError("proportion vector and ticker list differ in length");
    if (tickers_.empty()) throw ValidationError("portfolio must hold at least one security");
    for (Eigen::Index j = 0; j < proportions_.size(); ++j)
        if (!std::isfinite(proportions_[j]) || proportions_[j] < 0.0)
            throw ValidationError("portfolio proportions must be nonnegative (" + tickers_[j] +
                                  ")");
    if (std::abs(proportions_.sum() - 1.0) > 1e-10)
        throw ValidationError("portfolio proportions must sum to 1");
}

ClosingPortfolioMatrix::ClosingPortfolioMatrix(CalendarPtr calendar,
                                               std::vector<std::string> tickers,
                                               Eigen::MatrixXd rows)
    : calendar_(std::move(calendar)), tickers_(std::move(tickers)), values_(std::move(rows)) {
    if (!calendar_) throw ValidationError("closing portfolios require a calendar");
    if (static_cast<std::size_t>(values_.rows()) != calendar_->size() ||
        static_cast<std::size_t>(values_.cols()) != tickers_.size())
        throw ValidationError("closing-portfolio shape does not match calendar and tickers");
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < values_.cols(); ++j) {
            if (!std::isfinite(values_(i, j)) || values_(i, j) < 0.0)
                throw ValidationError("closing-portfolio entries must be nonnegative");
            sum += values_(i, j);
        }
        if (std::abs(sum - 1.0) > 1e-10)
            throw ValidationError("closing-portfolio row " + (*calendar_)[i].to_string() +
                                  " does not sum to 1");
    }
}

AdjustedPriceSeries synthesize(const PriceMatrix& X, const NotionalShares& s, std::string label) {
    check_dims(X, s.size(), "synthesize");
    return AdjustedPriceSeries(X.calendar(), X.values() * s.shares(), std::move(label));
}

ClosingPortfolioMatrix closing_portfolios(const PriceMatrix& X, const NotionalShares& s) {
    check_dims(X, s.size(), "closing_portfolios");
    Eigen::VectorXd xP = X.values() * s.shares();
    Eigen::ArrayXXd holdings = X.values().array().rowwise() * s.shares().transpose().array();
    Eigen::MatrixXd rows = (holdings.colwise() / xP.array()).matrix();
    return ClosingPortfolioMatrix(X.calendar(), X.tickers(), std::move(rows));
}

NotionalPortfolio notional_portfolio(const PriceMatrix& X_alpha,
                                     const AdjustedPriceSeries& xP_alpha,
                                     std::string normalization) {
    require_same_calendar(X_alpha.calendar(), xP_alpha.calendar(), "notional_portfolio");
    if (X_alpha.days() < X_alpha.securities())
        throw ValidationError("notional_portfolio: fewer market days than securities");

    Eigen::BDCSVD<Eigen::MatrixXd> svd(X_alpha.values(),
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] < kRankTolerance * sv[0])
        throw NumericalError(
            "notional_portfolio: security prices are linearly dependent (singular-value ratio " +
            std::to_string(sv[sv.size() - 1] / sv[0]) + ")");
    Eigen::VectorXd p = svd.solve(xP_alpha.prices());

    double raw_sum = p.sum();
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        if (p[j] < -kNegativeProportionTolerance)
            throw ValidationError("recovered proportion for " + X_alpha.tickers()[j] + " is " +
                                  std::to_string(p[j]) +
                                  "; the portfolio is not a long-only combination of these "
                                  "securities (or inputs are inconsistent)");
        if (p[j] < 0.0) p[j] = 0.0;
    }
    p /= p.sum();

    NotionalPortfolio result(std::move(p), X_alpha.tickers(), std::move(normalization));
    result.recovered_sum_ = raw_sum;
    return result;
}

NotionalPortfolio convert_portfolio(const NotionalPortfolio& p_alpha, const PriceMatrix& X_alpha,
                                    const AdjustedPriceSeries& xP_alpha,
                                    const AveragingVector& beta) {
    check_dims(X_alpha, p_alpha.size(), "convert_portfolio");
    require_same_calendar(X_alpha.calendar(), xP_alpha.calendar(), "convert_portfolio");
    require_same_calendar(X_alpha.calendar(), beta.calendar(), "convert_portfolio");

    double beta_P = beta.weights().dot(xP_alpha.prices());
    Eigen::VectorXd scaled = p_alpha.proportions();
    for (Eigen::Index j = 0; j < scaled.size(); ++j) {
        double beta_j = beta.weights().dot(X_alpha.values().col(j));
        scaled[j] *= beta_j / beta_P;
    }
    double sum = scaled.sum();
    if (std::abs(sum - 1.0) > 1e-6)
        throw ValidationError(
            "convert_portfolio: proportions are inconsistent with the given prices (converted "
            "sum " +
            std::to_string(sum) + ")");
    scaled /= sum;
    return NotionalPortfolio(std::move(scaled), p_alpha.tickers(), beta.description());
}

}  // namespace notional
