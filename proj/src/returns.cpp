#include "notional/returns.hpp"

#include <cmath>
#include <utility>

#include "notional/errors.hpp"

namespace notional {

std::string to_string(ReturnKind kind) {
    switch (kind) {
        case ReturnKind::Compound: return "compound";
        case ReturnKind::Continuous: return "continuous";
        case ReturnKind::Linear: return "linear";
    }
    return "unknown";
}

ReturnKind parse_return_kind(std::string_view text) {
    if (text == "compound") return ReturnKind::Compound;
    if (text == "continuous") return ReturnKind::Continuous;
    if (text == "linear") return ReturnKind::Linear;
    throw ValidationError("unknown return kind '" + std::string(text) +
                          "' (expected compound, continuous, or linear)");
}

ReturnMatrix::ReturnMatrix(PeriodSampler sampler, ReturnKind kind,
                           std::optional<LinearDenominator> denominator,
                           std::vector<std::string> tickers, Eigen::MatrixXd values)
    : sampler_(std::move(sampler)),
      kind_(kind),
      denominator_(std::move(denominator)),
      tickers_(std::move(tickers)),
      values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.rows()) != sampler_.periods())
        throw ValidationError("return matrix row count does not match the sampler's periods");
    if (static_cast<std::size_t>(values_.cols()) != tickers_.size())
        throw ValidationError("return matrix column count does not match its tickers");
    if (tickers_.empty()) throw ValidationError("return matrix needs at least one column");
    if ((kind_ == ReturnKind::Linear) != denominator_.has_value())
        throw ValidationError("linear returns require a denominator; other kinds forbid one");
    for (Eigen::Index i = 0; i < values_.rows(); ++i)
        for (Eigen::Index j = 0; j < values_.cols(); ++j) {
            if (!std::isfinite(values_(i, j)))
                throw ValidationError("return matrix entries must be finite");
            if (kind_ == ReturnKind::Compound && values_(i, j) <= -1.0)
                throw ValidationError("compound returns must exceed -1");
        }
}

namespace {

Eigen::VectorXd sampled(const AdjustedPriceSeries& series, const PeriodSampler& sampler) {
    require_same_calendar(series.calendar(), sampler.calendar(), "returns");
    auto idx = sampler.indices();
    Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
        out[static_cast<Eigen::Index>(k)] = series[idx[k]];
    return out;
}

Eigen::VectorXd sampled_differences(const Eigen::VectorXd& x) {
    return x.tail(x.size() - 1) - x.head(x.size() - 1);
}

}  // namespace

Eigen::VectorXd compound_returns(const AdjustedPriceSeries& series, const PeriodSampler& sampler) {
    Eigen::VectorXd x = sampled(series, sampler);
    return (x.tail(x.size() - 1).array() / x.head(x.size() - 1).array() - 1.0).matrix();
}

Eigen::VectorXd continuous_returns(const AdjustedPriceSeries& series,
                                   const PeriodSampler& sampler) {
    Eigen::VectorXd x = sampled(series, sampler);
    return (x.tail(x.size() - 1).array() / x.head(x.size() - 1).array()).log().matrix();
}

Eigen::VectorXd linear_returns(const AdjustedPriceSeries& series, const PeriodSampler& sampler,
                               const AveragingVector& alpha, double level) {
    AdjustedPriceSeries normalized = alpha_normalize(series, alpha, level);
    return sampled_differences(sampled(normalized, sampler)) / level;
}

Eigen::VectorXd linear_returns_prenormalized(const AdjustedPriceSeries& series,
                                             const PeriodSampler& sampler, double level) {
    if (!(level > 0.0) || !std::isfinite(level))
        throw ValidationError("normalization level must be positive");
    return sampled_differences(sampled(series, sampler)) / level;
}

namespace {

Eigen::VectorXd one_column(const AdjustedPriceSeries& series, const PeriodSampler& sampler,
                           ReturnKind kind, const std::optional<LinearDenominator>& denominator) {
    switch (kind) {
        case ReturnKind::Compound: return compound_returns(series, sampler);
        case ReturnKind::Continuous: return continuous_returns(series, sampler);
        case ReturnKind::Linear:
            if (!denominator) throw ValidationError("linear returns require a denominator");
            if (denominator->alpha)
                return linear_returns(series, sampler, *denominator->alpha, denominator->level);
            return linear_returns_prenormalized(series, sampler, denominator->level);
    }
    throw ValidationError("unknown return kind");
}

}  // namespace

ReturnMatrix return_matrix(std::span<const AdjustedPriceSeries> securities,
                           const AdjustedPriceSeries& xP, const PeriodSampler& sampler,
                           ReturnKind kind, const std::optional<LinearDenominator>& denominator) {
    if (kind != ReturnKind::Linear && denominator)
        throw ValidationError("only linear returns take a denominator");
    std::vector<std::string> tickers;
    tickers.reserve(securities.size() + 1);
    Eigen::MatrixXd values(static_cast<Eigen::Index>(sampler.periods()),
                           static_cast<Eigen::Index>(securities.size() + 1));
    for (std::size_t j = 0; j < securities.size(); ++j) {
        values.col(static_cast<Eigen::Index>(j)) =
            one_column(securities[j], sampler, kind, denominator);
        tickers.push_back(securities[j].label());
    }
    values.col(values.cols() - 1) = one_column(xP, sampler, kind, denominator);
    tickers.push_back(xP.label().empty() ? "PORTF" : xP.label());
    return ReturnMatrix(sampler, kind, denominator, std::move(tickers), std::move(values));
}

ReturnMatrix return_matrix(const PriceMatrix& X, const AdjustedPriceSeries& xP,
                           const PeriodSampler& sampler, ReturnKind kind,
                           const std::optional<LinearDenominator>& denominator) {
    std::vector<AdjustedPriceSeries> securities;
    securities.reserve(X.securities());
    for (std::size_t j = 0; j < X.securities(); ++j) securities.push_back(X.column(j));
    return return_matrix(std::span<const AdjustedPriceSeries>(securities), xP, sampler, kind,
                         denominator);
}

}  // namespace notional
