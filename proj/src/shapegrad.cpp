#include "steklov/shapegrad.hpp"
#include "steklov/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace steklov {

Eigen::MatrixXd fourier_diff_matrix(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("fourier_diff_matrix: n must be even and >= 2");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = 0.5 * sign / std::tan((i - j) * std::numbers::pi / n);
        }
    }
    return D;
}

Eigen::VectorXd tangential_derivative(const BoundaryGrid& grid, const Eigen::VectorXd& u) {
    return (fourier_diff_matrix(grid.n) * u).cwiseQuotient(grid.jac);
}

Eigen::VectorXd eigenvalue_derivative_weights(const BoundaryGrid& grid, const Eigen::MatrixXd& diff,
                                              double lambda, const Eigen::VectorXd& trace) {
    const double norm2 = grid.integrate(trace.cwiseProduct(trace));
    if (std::abs(norm2 - 1.0) > 1e-8)
        throw NormalizationViolated("eigenvalue_derivative: trace normalization off by " +
                                    std::to_string(norm2 - 1.0));

    const Eigen::VectorXd dus = (diff * trace).cwiseQuotient(grid.jac);
    const Eigen::VectorXd u2 = trace.cwiseProduct(trace);
    return dus.cwiseProduct(dus) - lambda * lambda * u2 - lambda * grid.kappa.cwiseProduct(u2);
}

Eigen::VectorXd eigenvalue_derivative_weights(const SteklovSpectrum& spectrum, int j) {
    if (j < 0 || j >= spectrum.count())
        throw std::out_of_range("eigenvalue_derivative_weights: index out of range");
    return eigenvalue_derivative_weights(spectrum.grid, fourier_diff_matrix(spectrum.grid.n),
                                         spectrum.lambdas[j], spectrum.traces.col(j));
}

double eigenvalue_derivative(const SteklovSpectrum& spectrum, int j, const Eigen::VectorXd& velocity) {
    return spectrum.grid.integrate(eigenvalue_derivative_weights(spectrum, j).cwiseProduct(velocity));
}

bool in_cluster(const SteklovSpectrum& spectrum, int j, double rel_tol) {
    const auto& l = spectrum.lambdas;
    // The neighbor above the last computed eigenvalue is unknown, so
    // simplicity cannot be certified there; treat the edge as clustered.
    if (j + 1 >= l.size()) return true;
    const bool near_prev = j > 0 && std::abs(l[j] - l[j - 1]) <= rel_tol * (1.0 + std::abs(l[j - 1]));
    const bool near_next = std::abs(l[j + 1] - l[j]) <= rel_tol * (1.0 + std::abs(l[j]));
    return near_prev || near_next;
}

GradientReport objective_gradient(const SteklovSpectrum& spectrum, int j,
                                  const std::vector<int>& cos_modes,
                                  const std::vector<int>& sin_modes) {
    const FourierShape& shape = spectrum.shape();
    const BoundaryGrid& grid = spectrum.grid;
    const double lambda = spectrum.lambdas[j];
    const double sqrt_area = std::sqrt(shape.area());
    const Eigen::VectorXd weights = eigenvalue_derivative_weights(spectrum, j);

    GradientReport report;
    report.j = j;
    report.cos_modes = cos_modes;
    report.sin_modes = sin_modes;
    report.cluster_warning = in_cluster(spectrum, j);
    report.dlambda_dA.resize(cos_modes.size());
    report.dLambda_dA.resize(cos_modes.size());
    report.dlambda_dB.resize(sin_modes.size());
    report.dLambda_dB.resize(sin_modes.size());

    auto chain = [&](double dlambda, double darea) {
        return dlambda * sqrt_area + lambda * darea / (2.0 * sqrt_area);
    };

    for (size_t i = 0; i < cos_modes.size(); ++i) {
        const int k = cos_modes[i];
        const Eigen::VectorXd c = perturbation_velocity(shape, grid, {ModeKind::Cosine, k});
        const double dlambda = grid.integrate(weights.cwiseProduct(c));
        report.dlambda_dA[static_cast<Eigen::Index>(i)] = dlambda;
        report.dLambda_dA[static_cast<Eigen::Index>(i)] = chain(dlambda, shape.area_derivative_cos(k));
    }
    for (size_t i = 0; i < sin_modes.size(); ++i) {
        const int k = sin_modes[i];
        const Eigen::VectorXd c = perturbation_velocity(shape, grid, {ModeKind::Sine, k});
        const double dlambda = grid.integrate(weights.cwiseProduct(c));
        report.dlambda_dB[static_cast<Eigen::Index>(i)] = dlambda;
        report.dLambda_dB[static_cast<Eigen::Index>(i)] = chain(dlambda, shape.area_derivative_sin(k));
    }
    return report;
}

} // namespace steklov
