#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace posscheck::linear {

struct LeastSquares {
    Eigen::VectorXd solution;
    Eigen::VectorXd residual;  // A x - b
    double residual_norm = 0.0;
};

/// Minimum-norm least-squares solution of A x = b (A may be rank deficient).
LeastSquares least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/// Finds x >= 0 with A x = b by phase-one simplex, or nullopt if the system
/// has no nonnegative solution. `tolerance` bounds the leftover artificial
/// mass accepted as zero.
std::optional<Eigen::VectorXd> nonnegative_solution(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                                    double tolerance);

}  // namespace posscheck::linear
