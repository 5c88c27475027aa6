#ifndef STEKLOV_EIGENSOLVER_HPP
#define STEKLOV_EIGENSOLVER_HPP

#include <Eigen/Core>
#include <vector>

#include "steklov/nystrom.hpp"

namespace steklov {

/// Post-processing thresholds for the QZ output.
struct SolveOptions {
    double imag_tol = 1e-8;     // discard if |imag| > imag_tol * (1 + |real|)
    double negative_tol = 1e-8; // clamp lambda in (-negative_tol, 0) to 0
};

/// Sorted Steklov spectrum with boundary data of the eigenfunctions.
///
/// traces holds u_j = B phi_j normalized to int u^2 ds = 1; densities holds the
/// matching scaled single-layer densities, so field evaluation off the boundary
/// reproduces the normalized eigenfunctions.
struct SteklovSpectrum {
    BoundaryGrid grid;
    Eigen::VectorXd lambdas;
    Eigen::MatrixXd densities;
    Eigen::MatrixXd traces;

    int count() const { return static_cast<int>(lambdas.size()); }
    const FourierShape& shape() const { return grid.shape; }
};

/// Generalized eigendecomposition of (A, B) with spurious-value filtering.
/// Requires count <= n/3 (the upper part of the discrete spectrum is junk).
/// Throws EigendecompositionFailure or InsufficientResolution.
SteklovSpectrum solve_spectrum(const OperatorPair& pair, int count, const SolveOptions& options = {});

/// Dilation-invariant eigenvalue Lambda_j = lambda_j * sqrt(|Omega|).
double normalized_eigenvalue(const SteklovSpectrum& spectrum, int j);

/// Evaluate eigenfunction j at arbitrary points off the boundary via the
/// single-layer representation. Accuracy degrades within ~one node spacing
/// of the boundary; no error is raised there.
Eigen::VectorXd evaluate_field(const SteklovSpectrum& spectrum, int j,
                               const Eigen::Matrix<double, Eigen::Dynamic, 2>& points);

/// Partition indices into clusters of consecutive eigenvalues with
/// |lambda_i - lambda_{i+1}| <= rel_tol * (1 + |lambda_i|).
std::vector<std::vector<int>> multiplicity_clusters(const Eigen::VectorXd& lambdas, double rel_tol = 1e-6);

inline std::vector<std::vector<int>> multiplicity_clusters(const SteklovSpectrum& spectrum, double rel_tol = 1e-6) {
    return multiplicity_clusters(spectrum.lambdas, rel_tol);
}

} // namespace steklov

#endif
