#ifndef STEKLOV_OPTIMIZER_HPP
#define STEKLOV_OPTIMIZER_HPP

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <vector>

#include "steklov/eigensolver.hpp"
#include "steklov/shapegrad.hpp"

namespace steklov {

enum class OptMode { Full, Symmetric };

/// Configuration for maximizing Lambda_p = lambda_p sqrt|Omega| over Fourier
/// shapes via the minimax formulation
///   max_Omega min_{p <= j <= p-1+m} Lambda_j(Omega),
/// m the expected multiplicity at the optimum. Solved by sequential linear
/// programming with an l-inf trust region on the active coefficients.
struct ProblemSpec {
    int p = 1;
    int m_window = 0;      // 0: expected_multiplicity(p)
    OptMode mode = OptMode::Full;
    int max_coeff_mode = 0; // Full mode: highest free Fourier mode; 0: 2p+5
    int n_nodes = 0;        // 0: max(6*p*m_window, 128) rounded up to even
    double step_tol = 1e-7;
    double stationarity_tol = 1e-9;
    int max_iters = 400;
    double initial_trust = 0.05;
    double max_trust = 0.25;

    int resolved_m_window() const;
    int resolved_max_mode() const;
    int resolved_n_nodes() const;
    int eigen_count() const; // window plus the reporting margin p-2..p+4
};

enum class Termination { Converged, MaxIters, Stalled };

struct IterateRecord {
    int iter = 0;
    double min_window = 0.0; // min_{j in window} Lambda_j at this accepted iterate
    double trust_radius = 0.0;
    Eigen::VectorXd window; // Lambda_j over the constrained window
    FourierShape shape;
};

struct OptimizationRun {
    ProblemSpec spec;
    FourierShape seed;
    std::vector<IterateRecord> history; // accepted iterates, min_window nondecreasing
    Termination status = Termination::MaxIters;
    FourierShape final_shape;       // gauge-rotated, dilated to area pi
    Eigen::VectorXd final_lambdas;  // spectrum of final_shape
    Eigen::VectorXd final_Lambdas;
    double best_value = 0.0;        // final min-window Lambda
    int spectrum_solves = 0;
};

/// Conjectured multiplicity of the p-th eigenvalue at the maximizer:
/// 2 for even p and p = 1, 3 for odd p >= 3.
int expected_multiplicity(int p);

/// Interpolated near-optimal p-fold symmetric domain: coefficients
/// a_p = 1/(0.1815 + 0.3444 p), a_2p = 1/(-6.1198 + 7.6443 p),
/// a_3p = 1/(-4.5563 - 7.6561 p). The fits were produced alongside base
/// radius a_0 = 2.5, which is the default here (Lambda is dilation-invariant).
FourierShape interp_seed(int p, double base_radius = 2.5);

/// Random full-mode seed: a_0 = 1, mode-k coefficients uniform in
/// [-0.1/k, 0.1/k]; redrawn until star-shaped.
FourierShape random_seed_shape(int max_mode, std::mt19937_64& rng);

/// Run one optimization from the given seed. Throws SeedInvalid for seeds
/// that are not star-shaped or that break the requested symmetry structure.
OptimizationRun optimize(const ProblemSpec& spec, const FourierShape& seed);

/// Restart driver: optimize from each seed (jobs > 1 runs them concurrently)
/// and return the run with the best final min-window value.
OptimizationRun optimize_best(const ProblemSpec& spec, const std::vector<FourierShape>& seeds, int jobs = 1);

/// Diagnostics for the structure conjecture on a finished run.
struct ConjectureReport {
    std::vector<std::vector<int>> clusters; // of the final spectrum, indices are eigenvalue numbers
    double gap = 0.0;                       // Lambda_p - Lambda_{p-1}
    double pfold_residual = 0.0;            // coefficient mass off the p-fold pattern
    double axis_residual = 0.0;             // sine mass after the gauge rotation
};

ConjectureReport verify_conjecture(const OptimizationRun& run, double rel_tol = 1e-6);

} // namespace steklov

#endif
