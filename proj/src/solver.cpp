#include "notional/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "notional/errors.hpp"

namespace notional {

namespace {
constexpr double kRankTolerance = 1e-8;
}

ProportionSolution solve_proportions(const Eigen::MatrixXd& returns,
                                     const Eigen::VectorXd& portfolio_returns) {
    const Eigen::Index m = returns.rows();
    const Eigen::Index n = returns.cols();
    if (portfolio_returns.size() != m)
        throw ValidationError("portfolio return vector length does not match the return matrix");
    if (n < 1) throw ValidationError("solve needs at least one security column");
    if (m < n)
        throw ValidationError("underdetermined system: " + std::to_string(m) + " periods for " +
                              std::to_string(n) + " securities");

    Eigen::BDCSVD<Eigen::MatrixXd> rank_check(returns);
    const auto& sv = rank_check.singularValues();
    if (sv[sv.size() - 1] < kRankTolerance * sv[0])
        throw NumericalError("return columns are linearly dependent (singular-value ratio " +
                             std::to_string(sv[sv.size() - 1] / sv[0]) + ")");

    Eigen::VectorXd p;
    if (n == 1) {
        p = Eigen::VectorXd::Ones(1);
    } else {
        // Householder Q of the ones vector: first column spans 1, the rest
        // span the sum-zero subspace.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::VectorXd::Ones(n));
        Eigen::MatrixXd Q = qr.householderQ();
        Eigen::MatrixXd N = Q.rightCols(n - 1);

        Eigen::VectorXd p0 = Eigen::VectorXd::Zero(n);
        p0[0] = 1.0;
        Eigen::VectorXd z = Eigen::BDCSVD<Eigen::MatrixXd>(
                                returns * N, Eigen::ComputeThinU | Eigen::ComputeThinV)
                                .solve(portfolio_returns - returns * p0);
        p = p0 + N * z;
        // The reduction keeps the sum at 1 up to roundoff; pin it exactly.
        p.array() -= (p.sum() - 1.0) / static_cast<double>(n);
    }

    ProportionSolution out;
    out.residual_abs = (returns * p - portfolio_returns).norm();
    double scale = portfolio_returns.norm();
    out.residual_rel = scale > 0.0 ? out.residual_abs / scale : 0.0;
    out.proportions = std::move(p);
    return out;
}

}  // namespace notional
