#include "notional/statistics.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "notional/errors.hpp"

namespace notional {

namespace {

void check_rows(Eigen::Index rows, const WeightSystem& omega, std::string_view what) {
    if (static_cast<std::size_t>(rows) != omega.size())
        throw ValidationError(std::string(what) + ": " + std::to_string(rows) +
                              " return periods but " + std::to_string(omega.size()) + " weights");
}

}  // namespace

WeightSystem::WeightSystem(Eigen::VectorXd weights) : weights_(std::move(weights)) {
    if (weights_.size() == 0) throw ValidationError("weight system must be nonempty");
    for (Eigen::Index i = 0; i < weights_.size(); ++i)
        if (!std::isfinite(weights_[i]) || weights_[i] < 0.0)
            throw ValidationError("observation weights must be nonnegative");
    if (std::abs(weights_.sum() - 1.0) > 1e-12)
        throw ValidationError("observation weights must sum to 1");
}

WeightSystem WeightSystem::uniform(std::size_t periods) {
    if (periods == 0) throw ValidationError("weight system must be nonempty");
    return WeightSystem(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(periods),
                                                  1.0 / static_cast<double>(periods)));
}

double expected_return(const Eigen::VectorXd& returns, const WeightSystem& omega) {
    check_rows(returns.size(), omega, "expected_return");
    return omega.weights().dot(returns);
}

Eigen::MatrixXd deviations(const Eigen::MatrixXd& returns, const WeightSystem& omega) {
    check_rows(returns.rows(), omega, "deviations");
    Eigen::RowVectorXd means = omega.weights().transpose() * returns;
    return returns.rowwise() - means;
}

CovarianceReport covariance(const Eigen::MatrixXd& returns, const WeightSystem& omega) {
    check_rows(returns.rows(), omega, "covariance");
    if (returns.cols() < 1) throw ValidationError("covariance needs at least one column");

    CovarianceReport report;
    report.deviation = deviations(returns, omega);
    report.covariance =
        report.deviation.transpose() * omega.weights().asDiagonal() * report.deviation;
    // Enforce exact symmetry against roundoff in the triple product.
    report.covariance = ((report.covariance + report.covariance.transpose()) / 2.0).eval();

    const Eigen::Index n = returns.cols();
    report.sigma.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
        report.sigma[j] = std::sqrt(std::max(report.covariance(j, j), 0.0));

    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.correlation.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            if (report.sigma[j] > 0.0 && report.sigma[k] > 0.0)
                report.correlation(j, k) =
                    report.covariance(j, k) / (report.sigma[j] * report.sigma[k]);
            else
                report.correlation(j, k) = nan;
        }
    }
    return report;
}

double portfolio_variance(const Eigen::MatrixXd& V, const Eigen::VectorXd& p) {
    if (V.rows() != V.cols() || V.rows() != p.size())
        throw ValidationError("covariance matrix and proportion vector dimensions disagree");
    return p.dot(V * p);
}

double return_risk_ratio(const Eigen::VectorXd& returns, const WeightSystem& omega) {
    double e = expected_return(returns, omega);
    Eigen::VectorXd z = returns.array() - e;
    double variance = omega.weights().dot(z.cwiseProduct(z));
    double sigma = std::sqrt(std::max(variance, 0.0));
    if (sigma == 0.0)
        throw NumericalError("return-risk ratio is undefined: returns have zero dispersion");
    return e / sigma;
}

StatsReport stats_report(const Eigen::MatrixXd& returns, std::vector<std::string> tickers,
                         const WeightSystem& omega) {
    if (static_cast<std::size_t>(returns.cols()) != tickers.size())
        throw ValidationError("stats: column count does not match ticker list");
    CovarianceReport cov = covariance(returns, omega);

    StatsReport report;
    report.tickers = std::move(tickers);
    report.expected = omega.weights().transpose() * returns;
    report.sigma = cov.sigma;
    report.ratio.resize(returns.cols());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (Eigen::Index j = 0; j < returns.cols(); ++j)
        report.ratio[j] = cov.sigma[j] > 0.0 ? report.expected[j] / cov.sigma[j] : nan;
    return report;
}

StatsReport annualize(const StatsReport& report, double periods_per_year) {
    if (!(periods_per_year > 0.0) || !std::isfinite(periods_per_year))
        throw ValidationError("annualization factor must be positive");
    StatsReport out = report;
    double root = std::sqrt(periods_per_year);
    out.expected *= periods_per_year;
    out.sigma *= root;
    out.ratio *= root;
    out.periods_per_year = report.periods_per_year * periods_per_year;
    return out;
}

}  // namespace notional
