#include "steklov/linprog.hpp"

#include <stdexcept>
#include <vector>

namespace steklov {

LpResult simplex_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const int m = static_cast<int>(A.rows());
    const int k = static_cast<int>(A.cols());
    if (c.size() != k || b.size() != m)
        throw std::invalid_argument("simplex_maximize: inconsistent dimensions");
    if ((b.array() < 0.0).any())
        throw std::invalid_argument("simplex_maximize: requires b >= 0");

    // Tableau [A I | b] with objective row [-c 0 | 0]; slack basis is feasible.
    Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m + 1, k + m + 1);
    tab.block(0, 0, m, k) = A;
    tab.block(0, k, m, m).setIdentity();
    tab.col(k + m).head(m) = b;
    tab.row(m).head(k) = -c.transpose();

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = k + i;

    constexpr double kEps = 1e-11;
    const int max_pivots = 2000 + 50 * (m + k);
    for (int pivots = 0; pivots < max_pivots; ++pivots) {
        // Bland: entering variable = lowest index with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < k + m; ++j) {
            if (tab(m, j) < -kEps) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            LpResult result;
            result.value = tab(m, k + m);
            result.x = Eigen::VectorXd::Zero(k);
            for (int i = 0; i < m; ++i)
                if (basis[i] < k) result.x[basis[i]] = tab(i, k + m);
            return result;
        }

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            const double a = tab(i, enter);
            if (a > kEps) {
                const double ratio = tab(i, k + m) / a;
                if (leave < 0 || ratio < best_ratio - kEps ||
                    (ratio < best_ratio + kEps && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) {
            LpResult result;
            result.bounded = false;
            return result;
        }

        tab.row(leave) /= tab(leave, enter);
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double factor = tab(i, enter);
            if (factor != 0.0) tab.row(i) -= factor * tab.row(leave);
        }
        basis[leave] = enter;
    }
    throw std::runtime_error("simplex_maximize: pivot limit exceeded");
}

MinimaxStep minimax_step(const Eigen::VectorXd& values, const Eigen::MatrixXd& G, double radius) {
    const int m = static_cast<int>(G.rows());
    const int k = static_cast<int>(G.cols());
    if (values.size() != m || radius <= 0.0)
        throw std::invalid_argument("minimax_step: bad arguments");

    // Model values at the corner d = -radius * 1; shifting t by their minimum
    // makes the right-hand side nonnegative.
    const Eigen::VectorXd corner = values - radius * G.rowwise().sum();
    const double t_shift = corner.minCoeff();

    // Variables x = (u, t_var), u = d + radius, t = t_var + t_shift.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + k, k + 1);
    Eigen::VectorXd b(m + k);
    A.block(0, 0, m, k) = -G;
    A.col(k).head(m).setOnes();
    b.head(m) = corner.array() - t_shift;
    A.block(m, 0, k, k).setIdentity();
    b.tail(k).setConstant(2.0 * radius);

    Eigen::VectorXd c = Eigen::VectorXd::Zero(k + 1);
    c[k] = 1.0;

    const LpResult lp = simplex_maximize(c, A, b);
    if (!lp.bounded) throw std::runtime_error("minimax_step: unbounded subproblem");

    MinimaxStep step;
    step.d = lp.x.head(k).array() - radius;
    step.t = lp.x[k] + t_shift;
    return step;
}

} // namespace steklov
