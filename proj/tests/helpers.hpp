#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "notional/calendar.hpp"
#include "notional/csv.hpp"
#include "notional/normalization.hpp"
#include "notional/price_series.hpp"

namespace testutil {

using namespace notional;

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(FIXTURES_DIR) / name;
}

inline io::Table load_fixture(const std::string& name) { return io::read_table(fixture(name)); }

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

inline double max_abs(const Eigen::MatrixXd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// The 13 week-ending market days the fixtures' averaging vector runs over.
inline std::vector<Date> alpha13_dates() {
    std::vector<Date> dates;
    for (const char* iso :
         {"2010-10-08", "2010-10-15", "2010-10-22", "2010-10-29", "2010-11-05", "2010-11-12",
          "2010-11-19", "2010-11-26", "2010-12-03", "2010-12-10", "2010-12-17", "2010-12-24",
          "2010-12-31"})
        dates.push_back(Date::parse(iso));
    return dates;
}

// Weekday-only calendar of n days starting 2010-01-04 (a Monday).
inline CalendarPtr weekday_calendar(std::size_t n) {
    std::vector<Date> days;
    Date d = Date::parse("2010-01-04");
    while (days.size() < n) {
        if (d.iso_weekday() <= 5) days.push_back(d);
        d = d.next_day();
    }
    return make_calendar(std::move(days));
}

inline AdjustedPriceSeries random_series(const CalendarPtr& cal, std::mt19937& rng,
                                         std::string label = "X") {
    std::lognormal_distribution<double> step(0.0, 0.02);
    Eigen::VectorXd x(static_cast<Eigen::Index>(cal->size()));
    x[0] = 50.0 + 100.0 * std::generate_canonical<double, 32>(rng);
    for (Eigen::Index i = 1; i < x.size(); ++i) x[i] = x[i - 1] * step(rng);
    return AdjustedPriceSeries(cal, std::move(x), std::move(label));
}

inline AveragingVector random_averaging(const CalendarPtr& cal, std::mt19937& rng) {
    std::gamma_distribution<double> gamma(0.8, 1.0);
    Eigen::VectorXd w(static_cast<Eigen::Index>(cal->size()));
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w[i] = gamma(rng);
        total += w[i];
    }
    if (total <= 0.0) {
        w.setConstant(1.0);
        total = static_cast<double>(w.size());
    }
    return AveragingVector(cal, w / total, "random");
}

// Explicit sampled-difference operator of the return construction: D picks
// successive differences, S picks sampled rows, so D*S maps a full series to
// its per-period changes. Used as an independent oracle.
inline Eigen::MatrixXd selection_matrix(std::span<const std::size_t> indices, std::size_t days) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(indices.size()),
                                              static_cast<Eigen::Index>(days));
    for (std::size_t k = 0; k < indices.size(); ++k)
        S(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(indices[k])) = 1.0;
    return S;
}

inline Eigen::MatrixXd difference_matrix(std::size_t points) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(points - 1),
                                              static_cast<Eigen::Index>(points));
    for (std::size_t k = 1; k < points; ++k) {
        D(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k - 1)) = -1.0;
        D(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = 1.0;
    }
    return D;
}

// Sum-constrained least squares via a differencing (non-orthonormal) basis
// and normal equations: independent of the production solver's path.
inline Eigen::VectorXd oracle_constrained_lsq(const Eigen::MatrixXd& R, const Eigen::VectorXd& r) {
    const Eigen::Index n = R.cols();
    if (n == 1) return Eigen::VectorXd::Ones(1);
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n, n - 1);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        N(j, j) = 1.0;
        N(j + 1, j) = -1.0;
    }
    Eigen::VectorXd p0 = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    Eigen::MatrixXd A = R * N;
    Eigen::VectorXd z = (A.transpose() * A).ldlt().solve(A.transpose() * (r - R * p0));
    return p0 + N * z;
}

}  // namespace testutil
