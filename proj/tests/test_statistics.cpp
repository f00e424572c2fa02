#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "notional/errors.hpp"
#include "notional/normalization.hpp"
#include "notional/returns.hpp"
#include "notional/statistics.hpp"

#include "helpers.hpp"

using namespace notional;
using testutil::max_abs;
using testutil::vec;

namespace {

Eigen::MatrixXd fixture_fractions(const char* name) {
    return io::as_returns(testutil::load_fixture(name), name).fractions;
}

Eigen::MatrixXd random_returns(std::mt19937& rng, Eigen::Index m, Eigen::Index n) {
    std::normal_distribution<double> g(0.0, 0.02);
    Eigen::MatrixXd R(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) R(i, j) = g(rng);
    return R;
}

}  // namespace

TEST_CASE("weight systems are nonnegative unit-sum vectors") {
    CHECK_THROWS_AS(WeightSystem(Eigen::VectorXd()), ValidationError);
    CHECK_THROWS_AS(WeightSystem(vec({0.5, -0.1, 0.6})), ValidationError);
    CHECK_THROWS_AS(WeightSystem(vec({0.5, 0.4})), ValidationError);
    CHECK_THROWS_AS(WeightSystem::uniform(0), ValidationError);

    WeightSystem uniform = WeightSystem::uniform(5);
    CHECK(uniform.size() == 5);
    CHECK(uniform.weights()[3] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_NOTHROW(WeightSystem(vec({1.0, 0.0, 0.0})));
}

TEST_CASE("expected return is the weighted mean") {
    Eigen::VectorXd r = vec({0.01, 0.03, -0.02, 0.02});
    CHECK(expected_return(r, WeightSystem::uniform(4)) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(expected_return(r, WeightSystem(vec({0.0, 0.0, 1.0, 0.0}))) ==
          doctest::Approx(-0.02).epsilon(1e-15));

    Eigen::MatrixXd c1 = fixture_fractions("table_c1_compound.csv");
    double annual =
        expected_return(c1.col(0), WeightSystem::uniform(static_cast<std::size_t>(c1.rows()))) *
        52.0 * 100.0;
    CHECK(annual == doctest::Approx(10.28).epsilon(2e-3));
}

TEST_CASE("deviations remove the weighted mean and are idempotent") {
    std::mt19937 rng(3030);
    Eigen::MatrixXd R = random_returns(rng, 15, 4);
    Eigen::VectorXd raw = Eigen::VectorXd::NullaryExpr(
        15, [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); });
    WeightSystem omega(raw / raw.sum());

    Eigen::MatrixXd Z = deviations(R, omega);
    CHECK(max_abs(omega.weights().transpose() * Z) < 1e-14);
    CHECK(max_abs(deviations(Z, omega) - Z) < 1e-14);
}

TEST_CASE("covariance ties together sigma and correlation") {
    std::mt19937 rng(3131);
    Eigen::MatrixXd R = random_returns(rng, 20, 4);
    WeightSystem omega = WeightSystem::uniform(20);
    CovarianceReport report = covariance(R, omega);

    for (Eigen::Index j = 0; j < 4; ++j) {
        CHECK(report.sigma[j] == doctest::Approx(std::sqrt(report.covariance(j, j)))
                                     .epsilon(1e-14));
        CHECK(report.correlation(j, j) == doctest::Approx(1.0).epsilon(1e-12));
        for (Eigen::Index k = 0; k < 4; ++k)
            CHECK(report.covariance(j, k) ==
                  doctest::Approx(report.correlation(j, k) * report.sigma[j] * report.sigma[k])
                      .epsilon(1e-12));
    }
    CHECK(max_abs(report.covariance - report.covariance.transpose()) == 0.0);
    CHECK(max_abs(report.deviation - deviations(R, omega)) == 0.0);

    // Positive semidefinite and within the correlation bound.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(report.covariance);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
    CHECK(report.correlation.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("an affine column correlates at exactly plus or minus one") {
    Eigen::VectorXd base = vec({0.01, -0.02, 0.03, 0.005, -0.015});
    Eigen::MatrixXd R(5, 3);
    R.col(0) = base;
    R.col(1) = 2.0 * base.array() + 0.001;
    R.col(2) = -0.5 * base.array() + 0.002;
    CovarianceReport report = covariance(R, WeightSystem::uniform(5));
    CHECK(report.correlation(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.correlation(0, 2) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("a constant column has undefined correlation, zero variance") {
    Eigen::MatrixXd R(4, 2);
    R.col(0) = vec({0.01, 0.02, -0.01, 0.0});
    R.col(1) = Eigen::VectorXd::Constant(4, 0.004);
    CovarianceReport report = covariance(R, WeightSystem::uniform(4));
    CHECK(report.sigma[1] == 0.0);
    CHECK(report.covariance(1, 1) == 0.0);
    CHECK(std::abs(report.covariance(0, 1)) < 1e-18);
    CHECK(std::isnan(report.correlation(0, 1)));
    CHECK(std::isnan(report.correlation(1, 0)));
    CHECK(std::isnan(report.correlation(1, 1)));
    CHECK(report.correlation(0, 0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(covariance(Eigen::MatrixXd(4, 0), WeightSystem::uniform(4)),
                    ValidationError);
}

TEST_CASE("fixture correlations match the published figure") {
    Eigen::MatrixXd d2 = fixture_fractions("table_d2_linear.csv");
    CovarianceReport report = covariance(d2.leftCols(5), WeightSystem::uniform(39));
    CHECK(report.correlation(0, 1) == doctest::Approx(-0.470).epsilon(2e-3));
}

TEST_CASE("portfolio variance is the quadratic form") {
    Eigen::MatrixXd V(2, 2);
    V << 4.0, 1.0, 1.0, 9.0;
    CHECK(portfolio_variance(V, vec({1.0, 0.0})) == doctest::Approx(4.0));
    CHECK(portfolio_variance(V, vec({0.5, 0.5})) == doctest::Approx(0.25 * (4 + 9 + 2)));
    CHECK_THROWS_AS(portfolio_variance(V, vec({1.0, 0.0, 0.0})), ValidationError);

    // For an exact linear combination, p^T V p equals the combination's own
    // variance.
    std::mt19937 rng(3232);
    Eigen::MatrixXd R = random_returns(rng, 18, 3);
    Eigen::VectorXd p = vec({0.2, 0.5, 0.3});
    Eigen::MatrixXd full(18, 4);
    full.leftCols(3) = R;
    full.col(3) = R * p;
    WeightSystem omega = WeightSystem::uniform(18);
    CovarianceReport report = covariance(full, omega);
    double direct = report.covariance(3, 3);
    double composed = portfolio_variance(report.covariance.topLeftCorner(3, 3), p);
    CHECK(direct == doctest::Approx(composed).epsilon(1e-12));
}

TEST_CASE("the return-risk ratio divides mean by deviation") {
    Eigen::VectorXd r = vec({-0.01, 0.03, 0.01, 0.05});
    WeightSystem omega = WeightSystem::uniform(4);
    double mean = expected_return(r, omega);
    double sigma = covariance(r, omega).sigma[0];
    CHECK(return_risk_ratio(r, omega) == doctest::Approx(mean / sigma).epsilon(1e-14));

    CHECK_THROWS_AS(return_risk_ratio(Eigen::VectorXd::Constant(4, 0.01), omega),
                    NumericalError);

    Eigen::VectorXd centered = vec({-0.02, 0.02, -0.02, 0.02});
    CHECK(return_risk_ratio(centered, omega) == doctest::Approx(0.0));
}

TEST_CASE("stats reports summarize per column and annualize multiplicatively") {
    Eigen::MatrixXd R(4, 2);
    R.col(0) = vec({0.01, 0.02, -0.01, 0.0});
    R.col(1) = Eigen::VectorXd::Constant(4, 0.004);
    WeightSystem omega = WeightSystem::uniform(4);

    StatsReport report = stats_report(R, {"A", "FLAT"}, omega);
    CHECK(report.tickers == std::vector<std::string>{"A", "FLAT"});
    CHECK(report.periods_per_year == 1.0);
    CHECK(report.expected[0] == doctest::Approx(0.005).epsilon(1e-14));
    CHECK(report.expected[1] == doctest::Approx(0.004).epsilon(1e-14));
    CHECK(report.sigma[1] == 0.0);
    CHECK(std::isnan(report.ratio[1]));
    CHECK(report.ratio[0] == doctest::Approx(report.expected[0] / report.sigma[0]));

    StatsReport annual = annualize(report, 52.0);
    CHECK(annual.periods_per_year == 52.0);
    CHECK(annual.expected[0] == doctest::Approx(report.expected[0] * 52.0).epsilon(1e-14));
    CHECK(annual.sigma[0] ==
          doctest::Approx(report.sigma[0] * std::sqrt(52.0)).epsilon(1e-14));
    CHECK(annual.ratio[0] ==
          doctest::Approx(report.ratio[0] * std::sqrt(52.0)).epsilon(1e-14));
    CHECK(std::isnan(annual.ratio[1]));

    StatsReport twice = annualize(annual, 2.0);
    CHECK(twice.periods_per_year == 104.0);
    CHECK_THROWS_AS(annualize(report, 0.0), ValidationError);
    CHECK_THROWS_AS(annualize(report, -4.0), ValidationError);
}

TEST_CASE("stats of mismatched weight counts are rejected") {
    Eigen::MatrixXd R = Eigen::MatrixXd::Constant(5, 2, 0.01);
    CHECK_THROWS_AS(stats_report(R, {"A", "B"}, WeightSystem::uniform(4)), ValidationError);
    CHECK_THROWS_AS(stats_report(R, {"A"}, WeightSystem::uniform(5)), ValidationError);
}

TEST_CASE("return-risk ratios ignore the linear-return denominator") {
    std::mt19937 rng(3434);
    for (int trial = 0; trial < 10; ++trial) {
        CalendarPtr cal = testutil::weekday_calendar(30);
        AdjustedPriceSeries x = testutil::random_series(cal, rng, "X");
        PeriodSampler weekly = sample_periodic(cal, WeekEnding{});
        AveragingVector alpha = testutil::random_averaging(cal, rng);
        AveragingVector beta = testutil::random_averaging(cal, rng);
        WeightSystem omega = WeightSystem::uniform(weekly.periods());

        Eigen::VectorXd ra = linear_returns(x, weekly, alpha);
        Eigen::VectorXd rb = linear_returns(x, weekly, beta);
        CHECK(return_risk_ratio(ra, omega) ==
              doctest::Approx(return_risk_ratio(rb, omega)).epsilon(1e-12));
    }
}

TEST_CASE("correlations ignore per-column scaling") {
    std::mt19937 rng(3535);
    Eigen::MatrixXd R = random_returns(rng, 25, 4);
    WeightSystem omega = WeightSystem::uniform(25);
    Eigen::MatrixXd scaled = R;
    Eigen::VectorXd lambdas = vec({3.0, 0.2, 11.0, 1.7});
    for (Eigen::Index j = 0; j < 4; ++j) scaled.col(j) *= lambdas[j];

    Eigen::MatrixXd base = covariance(R, omega).correlation;
    Eigen::MatrixXd after = covariance(scaled, omega).correlation;
    CHECK(max_abs(base - after) < 1e-12);
}
