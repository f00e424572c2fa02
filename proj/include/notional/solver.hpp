#pragma once

#include <Eigen/Dense>

namespace notional {

// Result of the sum-constrained least-squares fit. proportions may contain
// negative components: the fit is constrained in sum only, and sign patterns
// are part of what the result reveals about the chosen return definition.
struct ProportionSolution {
    Eigen::VectorXd proportions;  // sums to 1 (hard constraint)
    double residual_abs = 0.0;    // l2 norm of R p - r_P, fractional units
    double residual_rel = 0.0;    // residual_abs / l2 norm of r_P
};

// Minimizes the l2 norm of R p - r_P subject to the components of p summing
// to 1, by eliminating the constraint: p = e1 + N z with N an orthonormal
// basis of the sum-zero subspace, then ordinary least squares in z.
// Requires m >= n and full column rank (singular-value ratio >= 1e-8).
ProportionSolution solve_proportions(const Eigen::MatrixXd& returns,
                                     const Eigen::VectorXd& portfolio_returns);

}  // namespace notional
