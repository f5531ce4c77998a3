#include "posscheck/linear.hpp"

#include <cmath>
#include <limits>

namespace posscheck::linear {

LeastSquares least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    LeastSquares out;
    out.solution = a.completeOrthogonalDecomposition().solve(b);
    out.residual = a * out.solution - b;
    out.residual_norm = out.residual.norm();
    return out;
}

std::optional<Eigen::VectorXd> nonnegative_solution(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                                    double tolerance) {
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    constexpr double kPivotTol = 1e-11;

    // Tableau [A | I | b] with one artificial per row, rows sign-flipped so b >= 0.
    Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(rows, cols + rows + 1);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double sign = b(i) < 0 ? -1.0 : 1.0;
        tab.row(i).head(cols) = sign * a.row(i);
        tab(i, cols + i) = 1.0;
        tab(i, cols + rows) = sign * b(i);
    }
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
    for (Eigen::Index i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = cols + i;

    // Reduced costs of "minimise the sum of artificials".
    Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(cols + rows + 1);
    for (Eigen::Index i = 0; i < rows; ++i) cost -= tab.row(i);
    for (Eigen::Index i = 0; i < rows; ++i) cost(cols + i) = 0.0;

    const int max_iterations = static_cast<int>(50 * (rows + cols) + 1000);
    int stalled = 0;
    for (int iter = 0; iter < max_iterations; ++iter) {
        // Dantzig's rule, switching to Bland's after a run of degenerate pivots.
        Eigen::Index entering = -1;
        const bool bland = stalled > 50;
        double best = -kPivotTol;
        for (Eigen::Index j = 0; j < cols + rows; ++j) {
            if (cost(j) < best) {
                entering = j;
                if (bland) break;
                best = cost(j);
            }
        }
        if (entering < 0) break;

        Eigen::Index leaving = -1;
        double ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double coef = tab(i, entering);
            if (coef <= kPivotTol) continue;
            const double r = tab(i, cols + rows) / coef;
            if (r < ratio - 1e-14 ||
                (std::abs(r - ratio) <= 1e-14 && leaving >= 0 &&
                 basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
                ratio = r;
                leaving = i;
            }
        }
        if (leaving < 0) break;  // unbounded direction; cannot happen in phase one

        stalled = ratio <= 1e-14 ? stalled + 1 : 0;
        tab.row(leaving) /= tab(leaving, entering);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i != leaving && tab(i, entering) != 0.0) tab.row(i) -= tab(i, entering) * tab.row(leaving);
        }
        cost -= cost(entering) * tab.row(leaving);
        basis[static_cast<std::size_t>(leaving)] = entering;
    }

    double artificial = 0.0;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Eigen::Index var = basis[static_cast<std::size_t>(i)];
        const double value = tab(i, cols + rows);
        if (var >= cols) {
            artificial += std::abs(value);
        } else {
            x(var) = std::max(0.0, value);
        }
    }
    if (artificial > tolerance) return std::nullopt;
    return x;
}

}  // namespace posscheck::linear
