#include "steklov/eigensolver.hpp"
#include "steklov/errors.hpp"
#include "steklov/qz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace steklov {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Candidate {
    double lambda;
    Eigen::VectorXd density;
};
} // namespace

SteklovSpectrum solve_spectrum(const OperatorPair& pair, int count, const SolveOptions& options) {
    const int n = pair.grid.n;
    if (count < 1) throw std::invalid_argument("solve_spectrum: count must be >= 1");
    if (count > n / 3)
        throw std::invalid_argument("solve_spectrum: count " + std::to_string(count) +
                                    " exceeds the accuracy guard n/3 = " + std::to_string(n / 3));

    const QzResult qz = qz_solve(pair.A, pair.B);

    std::vector<Candidate> kept;
    kept.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double beta = qz.beta[i];
        if (beta == 0.0 || !std::isfinite(beta)) continue;
        const double re = qz.alpha_re[i] / beta;
        const double im = qz.alpha_im[i] / beta;
        if (!std::isfinite(re) || !std::isfinite(im)) continue;
        if (std::abs(im) > options.imag_tol * (1.0 + std::abs(re))) continue;

        double lambda = re;
        if (lambda < 0.0) {
            if (lambda < -options.negative_tol)
                throw InsufficientResolution("solve_spectrum: eigenvalue " + std::to_string(lambda) +
                                             " below the negativity tolerance; increase n");
            lambda = 0.0;
        }
        // Conjugate pairs carry Re(v) and Im(v) in adjacent columns; both span
        // the near-degenerate invariant subspace and are kept separately.
        kept.push_back({lambda, qz.vr.col(i)});
    }

    if (static_cast<int>(kept.size()) < count)
        throw InsufficientResolution("solve_spectrum: only " + std::to_string(kept.size()) +
                                     " valid eigenvalues for requested count " + std::to_string(count));

    std::sort(kept.begin(), kept.end(),
              [](const Candidate& lhs, const Candidate& rhs) { return lhs.lambda < rhs.lambda; });

    SteklovSpectrum spectrum;
    spectrum.grid = pair.grid;
    spectrum.lambdas.resize(count);
    spectrum.densities.resize(n, count);
    spectrum.traces.resize(n, count);

    for (int j = 0; j < count; ++j) {
        const Candidate& c = kept[j];
        Eigen::VectorXd trace = pair.B * c.density;
        const double norm2 = pair.grid.integrate(trace.cwiseProduct(trace));
        if (!(norm2 > 0.0) || !std::isfinite(norm2))
            throw InsufficientResolution("solve_spectrum: degenerate eigenvector trace at index " + std::to_string(j));
        double scale = 1.0 / std::sqrt(norm2);

        int imax = 0;
        trace.cwiseAbs().maxCoeff(&imax);
        if (trace[imax] < 0.0) scale = -scale;

        spectrum.lambdas[j] = c.lambda;
        spectrum.traces.col(j) = scale * trace;
        spectrum.densities.col(j) = scale * c.density;
    }
    return spectrum;
}

double normalized_eigenvalue(const SteklovSpectrum& spectrum, int j) {
    if (j < 0 || j >= spectrum.count())
        throw std::out_of_range("normalized_eigenvalue: index out of range");
    return spectrum.lambdas[j] * std::sqrt(spectrum.shape().area());
}

Eigen::VectorXd evaluate_field(const SteklovSpectrum& spectrum, int j,
                               const Eigen::Matrix<double, Eigen::Dynamic, 2>& points) {
    if (j < 0 || j >= spectrum.count())
        throw std::out_of_range("evaluate_field: index out of range");

    const BoundaryGrid& grid = spectrum.grid;
    const Eigen::VectorXd& phi = spectrum.densities.col(j);
    const double mean = grid.integrate(phi) / grid.perimeter();

    Eigen::VectorXd values(points.rows());
    for (Eigen::Index p = 0; p < points.rows(); ++p) {
        double acc = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double dx = points(p, 0) - grid.x(i, 0);
            const double dy = points(p, 1) - grid.x(i, 1);
            // floor keeps samples that land exactly on a node finite
            const double r2 = std::max(dx * dx + dy * dy, 1e-300);
            acc += std::log(r2) * (phi[i] - mean) * grid.jac[i];
        }
        // log|z| = log(|z|^2)/2; trapezoid weight and 1/(2pi) folded in here.
        values[p] = grid.weight() * acc / (2.0 * kTwoPi) + mean;
    }
    return values;
}

std::vector<std::vector<int>> multiplicity_clusters(const Eigen::VectorXd& lambdas, double rel_tol) {
    if (rel_tol <= 0.0) throw std::invalid_argument("multiplicity_clusters: rel_tol must be positive");
    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < lambdas.size(); ++i) {
        if (i > 0 && std::abs(lambdas[i] - lambdas[i - 1]) <= rel_tol * (1.0 + std::abs(lambdas[i - 1]))) {
            clusters.back().push_back(i);
        } else {
            clusters.push_back({i});
        }
    }
    return clusters;
}

} // namespace steklov
