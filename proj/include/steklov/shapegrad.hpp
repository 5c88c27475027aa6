#ifndef STEKLOV_SHAPEGRAD_HPP
#define STEKLOV_SHAPEGRAD_HPP

#include <Eigen/Core>
#include <vector>

#include "steklov/eigensolver.hpp"

namespace steklov {

/// Derivatives of lambda_j and Lambda_j = lambda_j sqrt|Omega| with respect to
/// the requested Fourier coefficients. cluster_warning is set when lambda_j is
/// not simple at tolerance; the value is still returned, but a caller
/// optimizing through a cluster must use minimax handling instead.
struct GradientReport {
    int j = 0;
    std::vector<int> cos_modes;
    std::vector<int> sin_modes;
    Eigen::VectorXd dLambda_dA;
    Eigen::VectorXd dLambda_dB;
    Eigen::VectorXd dlambda_dA;
    Eigen::VectorXd dlambda_dB;
    bool cluster_warning = false;
};

/// Periodic spectral differentiation matrix on n equispaced nodes (n even):
/// exact d/dt for trigonometric polynomials of degree < n/2.
Eigen::MatrixXd fourier_diff_matrix(int n);

/// Arc-length derivative of a nodal boundary function, (D u) / jac.
Eigen::VectorXd tangential_derivative(const BoundaryGrid& grid, const Eigen::VectorXd& u);

/// Hadamard derivative of a unit-normalized simple eigenvalue under boundary
/// normal velocity c:
///   lambda' = int ((du/ds)^2 - lambda^2 u^2 - lambda kappa u^2) c ds,
/// using |grad u|^2 = (d_n u)^2 + (d_t u)^2 = lambda^2 u^2 + (du/ds)^2 on the
/// boundary. Throws NormalizationViolated if int u^2 ds deviates from 1.
double eigenvalue_derivative(const SteklovSpectrum& spectrum, int j, const Eigen::VectorXd& velocity);

/// Nodal weights W with lambda' = int W c ds for eigenvalue j.
Eigen::VectorXd eigenvalue_derivative_weights(const SteklovSpectrum& spectrum, int j);

/// Same weights for an explicit unit-normalized (lambda, trace) pair; diff is
/// the matrix from fourier_diff_matrix(grid.n), passed in so callers can reuse it.
Eigen::VectorXd eigenvalue_derivative_weights(const BoundaryGrid& grid, const Eigen::MatrixXd& diff,
                                              double lambda, const Eigen::VectorXd& trace);

/// Whether lambda_j sits in a multiplicity cluster at relative tolerance.
/// The last computed index always reports true (its upper neighbor is
/// unknown), so request at least j+2 eigenvalues to classify eigenvalue j.
bool in_cluster(const SteklovSpectrum& spectrum, int j, double rel_tol = 1e-6);

/// Gradient of Lambda_j with respect to the listed coefficient directions:
/// dLambda = lambda' sqrt|Omega| + lambda d|Omega|/dcoef / (2 sqrt|Omega|).
GradientReport objective_gradient(const SteklovSpectrum& spectrum, int j,
                                  const std::vector<int>& cos_modes,
                                  const std::vector<int>& sin_modes);

} // namespace steklov

#endif
