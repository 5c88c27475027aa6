#include "steklov/nystrom.hpp"

#include <cmath>
#include <numbers>

namespace steklov {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

Eigen::VectorXd kress_log_weights(int n) {
    // ln(4 sin^2(s/2)) = -2 sum_{m>=1} cos(m s)/m. Truncate the interpolatory
    // rule at the Nyquist mode:
    //   R(s) = -(4pi/n) sum_{m=1}^{n/2-1} cos(m s)/m - (4pi/n^2) cos(n s / 2).
    Eigen::VectorXd weights(n);
    for (int d = 0; d < n; ++d) {
        const double s = kTwoPi * d / n;
        double sum = 0.0;
        for (int m = 1; m < n / 2; ++m) sum += std::cos(m * s) / m;
        weights[d] = -(2.0 * kTwoPi / n) * sum - (kTwoPi / (n * n / 2.0)) * std::cos(0.5 * n * s);
    }
    return weights;
}

Eigen::MatrixXd mean_projector(const BoundaryGrid& grid) {
    const double length = grid.perimeter();
    Eigen::RowVectorXd row = (grid.weight() / length) * grid.jac.transpose();
    return Eigen::VectorXd::Ones(grid.n) * row;
}

Eigen::MatrixXd assemble_single_layer(const BoundaryGrid& grid) {
    const int n = grid.n;
    const Eigen::VectorXd logw = kress_log_weights(n);
    Eigen::MatrixXd S(n, n);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double smooth; // (1/2pi) ln( |x(t_i)-x(t_j)| / (2 |sin((t_i-t_j)/2)|) )
            if (i == j) {
                smooth = std::log(grid.jac[i]) / kTwoPi;
            } else {
                const double dx = grid.x(i, 0) - grid.x(j, 0);
                const double dy = grid.x(i, 1) - grid.x(j, 1);
                const double dist = std::hypot(dx, dy);
                const double sine = 2.0 * std::abs(std::sin(0.5 * (grid.t[i] - grid.t[j])));
                smooth = std::log(dist / sine) / kTwoPi;
            }
            const int d = (i - j + n) % n;
            S(i, j) = (logw[d] / (2.0 * kTwoPi) + grid.weight() * smooth) * grid.jac[j];
        }
    }
    return S;
}

Eigen::MatrixXd assemble_normal_derivative(const BoundaryGrid& grid) {
    const int n = grid.n;
    Eigen::MatrixXd K(n, n);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double kernel; // n(x_i) . (x_i - x_j) / (2pi |x_i - x_j|^2)
            if (i == j) {
                kernel = grid.kappa[i] / (2.0 * kTwoPi);
            } else {
                const double dx = grid.x(i, 0) - grid.x(j, 0);
                const double dy = grid.x(i, 1) - grid.x(j, 1);
                const double r2 = dx * dx + dy * dy;
                kernel = (grid.normal(i, 0) * dx + grid.normal(i, 1) * dy) / (kTwoPi * r2);
            }
            K(i, j) = grid.weight() * kernel * grid.jac[j];
        }
    }
    return K;
}

OperatorPair assemble_pair(const BoundaryGrid& grid) {
    const int n = grid.n;
    const Eigen::MatrixXd P = mean_projector(grid);
    const Eigen::MatrixXd centered = Eigen::MatrixXd::Identity(n, n) - P;

    const Eigen::MatrixXd K = assemble_normal_derivative(grid);
    const Eigen::MatrixXd S = assemble_single_layer(grid);

    OperatorPair pair;
    // Interior Neumann trace of the single layer carries the -1/2 jump term;
    // on the unit disk this gives A cos(kt) = -cos(kt)/2 and eigenvalues
    // Lambda = k >= 0 against B cos(kt) = -cos(kt)/(2k).
    pair.A = (K - 0.5 * Eigen::MatrixXd::Identity(n, n)) * centered;
    pair.B = S * centered + P;
    pair.grid = grid;
    return pair;
}

} // namespace steklov
