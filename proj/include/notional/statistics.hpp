#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace notional {

inline constexpr double kWeeksPerYear = 52.0;

// Per-period observation weights: nonnegative, summing to one. Expected
// values and covariances are moments under these weights as given (no
// small-sample correction).
class WeightSystem {
public:
    explicit WeightSystem(Eigen::VectorXd weights);
    static WeightSystem uniform(std::size_t periods);

    const Eigen::VectorXd& weights() const { return weights_; }
    std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }

private:
    Eigen::VectorXd weights_;
};

// omega^T r.
double expected_return(const Eigen::VectorXd& returns, const WeightSystem& omega);

// Column j minus its weighted mean; every column of the result has weighted
// mean zero.
Eigen::MatrixXd deviations(const Eigen::MatrixXd& returns, const WeightSystem& omega);

// Weighted covariance and correlation of return columns. Zero-variance
// columns get NaN correlation entries (off the diagonal of C as well as on
// it): the statistic is undefined there, not zero.
struct CovarianceReport {
    Eigen::MatrixXd covariance;   // V, v_jk = sum_i w_i z_ij z_ik
    Eigen::MatrixXd correlation;  // C, c_jk = v_jk / (sigma_j sigma_k)
    Eigen::MatrixXd deviation;    // Z
    Eigen::VectorXd sigma;        // sqrt of V's diagonal
};
CovarianceReport covariance(const Eigen::MatrixXd& returns, const WeightSystem& omega);

// p^T V p.
double portfolio_variance(const Eigen::MatrixXd& V, const Eigen::VectorXd& p);

// Weighted mean over weighted standard deviation; NumericalError when the
// standard deviation is zero.
double return_risk_ratio(const Eigen::VectorXd& returns, const WeightSystem& omega);

// Per-column summary statistics. Values are fractions (0.01 = 1%); ratio is
// NaN where sigma is zero. periods_per_year records the annualization
// already applied (1 = per-period values).
struct StatsReport {
    std::vector<std::string> tickers;
    Eigen::VectorXd expected;
    Eigen::VectorXd sigma;
    Eigen::VectorXd ratio;
    double periods_per_year = 1.0;
};

StatsReport stats_report(const Eigen::MatrixXd& returns, std::vector<std::string> tickers,
                         const WeightSystem& omega);

// Scales expected returns by P and sigmas by sqrt(P) (variance by P), so the
// ratio scales by sqrt(P).
StatsReport annualize(const StatsReport& report, double periods_per_year);

}  // namespace notional
