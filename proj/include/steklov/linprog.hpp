#ifndef STEKLOV_LINPROG_HPP
#define STEKLOV_LINPROG_HPP

#include <Eigen/Core>

namespace steklov {

struct LpResult {
    bool bounded = true;
    double value = 0.0;
    Eigen::VectorXd x;
};

/// Dense tableau simplex for max c.x subject to A x <= b, x >= 0, b >= 0.
/// Bland's rule, so it terminates on degenerate problems. Sizes here are tiny
/// (tens of rows); no effort is made to be fast.
LpResult simplex_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

struct MinimaxStep {
    Eigen::VectorXd d;
    double t = 0.0;
};

/// Trust-region linearized minimax subproblem:
///   max_d min_j ( values_j + G.row(j) . d )  subject to  |d|_inf <= radius.
/// Epigraph LP solved after shifting d to [0, 2 radius]^k; the corner
/// d = -radius gives a feasible slack basis, so no phase-1 is needed.
MinimaxStep minimax_step(const Eigen::VectorXd& values, const Eigen::MatrixXd& G, double radius);

} // namespace steklov

#endif
