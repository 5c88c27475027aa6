#include "steklov/optimizer.hpp"
#include "steklov/errors.hpp"
#include "steklov/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace steklov {

namespace {
constexpr double kPi = std::numbers::pi;

struct ActiveModes {
    std::vector<int> cos_modes;
    std::vector<int> sin_modes;
    int coeff_length = 0; // shapes are padded to modes 0..coeff_length-1

    int count() const { return static_cast<int>(cos_modes.size() + sin_modes.size()); }
};

ActiveModes active_modes_for(const ProblemSpec& spec) {
    ActiveModes active;
    if (spec.mode == OptMode::Symmetric) {
        active.cos_modes = {spec.p, 2 * spec.p, 3 * spec.p};
        active.coeff_length = 3 * spec.p + 1;
    } else {
        const int m = spec.resolved_max_mode();
        for (int k = 0; k <= m; ++k) active.cos_modes.push_back(k);
        for (int k = 1; k <= m; ++k) active.sin_modes.push_back(k);
        active.coeff_length = m + 1;
    }
    return active;
}

FourierShape pad_shape(const FourierShape& shape, int coeff_length) {
    const int len = std::max<int>(coeff_length, static_cast<int>(shape.cosine_coeffs().size()));
    Eigen::VectorXd a = Eigen::VectorXd::Zero(len);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(len - 1);
    a.head(shape.cosine_coeffs().size()) = shape.cosine_coeffs();
    b.head(shape.sine_coeffs().size()) = shape.sine_coeffs();
    return FourierShape(std::move(a), std::move(b));
}

FourierShape apply_step(const FourierShape& shape, const ActiveModes& active, const Eigen::VectorXd& d) {
    Eigen::VectorXd a = shape.cosine_coeffs();
    Eigen::VectorXd b = shape.sine_coeffs();
    int idx = 0;
    for (int k : active.cos_modes) a[k] += d[idx++];
    for (int k : active.sin_modes) b[k - 1] += d[idx++];
    return FourierShape(std::move(a), std::move(b));
}

struct Evaluation {
    SteklovSpectrum spectrum;
    Eigen::VectorXd window; // Lambda over the constrained window
    double f = 0.0;         // min of window
};

Evaluation evaluate_shape(const FourierShape& shape, const ProblemSpec& spec) {
    const BoundaryGrid grid = build_grid(shape, spec.resolved_n_nodes());
    Evaluation eval;
    eval.spectrum = solve_spectrum(assemble_pair(grid), spec.eigen_count());
    const int m = spec.resolved_m_window();
    eval.window.resize(m);
    for (int i = 0; i < m; ++i) eval.window[i] = normalized_eigenvalue(eval.spectrum, spec.p + i);
    eval.f = eval.window.minCoeff();
    return eval;
}

/// Normal velocities of all active coefficient directions, one column each.
Eigen::MatrixXd velocity_matrix(const FourierShape& shape, const BoundaryGrid& grid, const ActiveModes& active) {
    Eigen::MatrixXd V(grid.n, active.count());
    int col = 0;
    for (int k : active.cos_modes) V.col(col++) = perturbation_velocity(shape, grid, {ModeKind::Cosine, k});
    for (int k : active.sin_modes) V.col(col++) = perturbation_velocity(shape, grid, {ModeKind::Sine, k});
    return V;
}

Eigen::VectorXd area_derivatives(const FourierShape& shape, const ActiveModes& active) {
    Eigen::VectorXd da(active.count());
    int idx = 0;
    for (int k : active.cos_modes) da[idx++] = shape.area_derivative_cos(k);
    for (int k : active.sin_modes) da[idx++] = shape.area_derivative_sin(k);
    return da;
}

struct ConstraintSet {
    Eigen::MatrixXd G;      // gradients of the linearized constraints
    Eigen::VectorXd values; // constraint values at the current iterate
};

/// Linearize Lambda over the window. Individual gradients of near-degenerate
/// eigenvalues depend on the arbitrary eigenvector basis the QZ step returned,
/// and the min over the pair drops linearly along directions that mix the
/// basis, which the two diagonal rows cannot see. Sampling the 45-degree
/// mixtures (u_i +- u_j)/sqrt2 as extra constraint rows restores a first-order
/// correct model of the minimax objective near clusters.
ConstraintSet linearize_window(const Evaluation& eval, const ProblemSpec& spec, const ActiveModes& active,
                               const Eigen::MatrixXd& diff) {
    const SteklovSpectrum& spectrum = eval.spectrum;
    const BoundaryGrid& grid = spectrum.grid;
    const FourierShape& shape = spectrum.shape();
    const int m = spec.resolved_m_window();
    const double sqrt_area = std::sqrt(shape.area());

    const Eigen::MatrixXd V = velocity_matrix(shape, grid, active);
    const Eigen::VectorXd da = area_derivatives(shape, active);
    const Eigen::VectorXd quad = grid.weight() * grid.jac; // arc-length quadrature weights

    auto gradient_row = [&](double lambda, const Eigen::VectorXd& trace) -> Eigen::RowVectorXd {
        const Eigen::VectorXd w = eigenvalue_derivative_weights(grid, diff, lambda, trace);
        const Eigen::RowVectorXd dlambda = (w.cwiseProduct(quad)).transpose() * V;
        return dlambda * sqrt_area + (lambda / (2.0 * sqrt_area)) * da.transpose();
    };

    std::vector<Eigen::RowVectorXd> rows;
    std::vector<double> values;
    for (int i = 0; i < m; ++i) {
        const int j = spec.p + i;
        rows.push_back(gradient_row(spectrum.lambdas[j], spectrum.traces.col(j)));
        values.push_back(eval.window[i]);
    }

    constexpr double kClusterRowTol = 1e-2;
    for (int i = 0; i < m; ++i) {
        for (int l = i + 1; l < m; ++l) {
            const int ji = spec.p + i;
            const int jl = spec.p + l;
            const double li = spectrum.lambdas[ji];
            const double ll = spectrum.lambdas[jl];
            if (std::abs(ll - li) > kClusterRowTol * (1.0 + std::abs(li))) continue;
            for (double sign : {1.0, -1.0}) {
                Eigen::VectorXd mix = spectrum.traces.col(ji) + sign * spectrum.traces.col(jl);
                const double norm2 = grid.integrate(mix.cwiseProduct(mix));
                if (norm2 < 0.4) continue; // traces nearly parallel, mixture degenerate
                mix /= std::sqrt(norm2);
                rows.push_back(gradient_row(0.5 * (li + ll), mix));
                values.push_back(0.5 * (eval.window[i] + eval.window[l]));
            }
        }
    }

    ConstraintSet set;
    set.G.resize(rows.size(), active.count());
    set.values.resize(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        set.G.row(static_cast<Eigen::Index>(r)) = rows[r];
        set.values[static_cast<Eigen::Index>(r)] = values[r];
    }
    return set;
}

/// Rotate so the largest-magnitude mode is pure cosine with positive sign.
FourierShape gauge_rotated(const FourierShape& shape) {
    const auto& a = shape.cosine_coeffs();
    const auto& b = shape.sine_coeffs();
    int best_k = 0;
    double best_mag = 0.0;
    for (int k = 1; k <= shape.max_mode(); ++k) {
        const double mag = std::hypot(a[k], b[k - 1]);
        if (mag > best_mag) {
            best_mag = mag;
            best_k = k;
        }
    }
    if (best_k == 0 || best_mag < 1e-12) return shape;
    return shape.rotated(-std::atan2(b[best_k - 1], a[best_k]) / best_k);
}

} // namespace

int ProblemSpec::resolved_m_window() const { return m_window > 0 ? m_window : expected_multiplicity(p); }

int ProblemSpec::resolved_max_mode() const { return max_coeff_mode > 0 ? max_coeff_mode : 2 * p + 5; }

int ProblemSpec::eigen_count() const { return p + 7; }

int ProblemSpec::resolved_n_nodes() const {
    int n = n_nodes > 0 ? n_nodes : std::max(6 * p * resolved_m_window(), 128);
    n = std::max(n, 3 * eigen_count() + 2);
    if (n % 2 != 0) ++n;
    return n;
}

int expected_multiplicity(int p) {
    if (p < 1) throw std::invalid_argument("expected_multiplicity: p must be >= 1");
    return (p == 1 || p % 2 == 0) ? 2 : 3;
}

FourierShape interp_seed(int p, double base_radius) {
    if (p < 2) throw std::invalid_argument("interp_seed: p must be >= 2");
    Eigen::VectorXd a = Eigen::VectorXd::Zero(3 * p + 1);
    a[0] = base_radius;
    a[p] = 1.0 / (0.1815 + 0.3444 * p);
    a[2 * p] = 1.0 / (-6.1198 + 7.6443 * p);
    a[3 * p] = 1.0 / (-4.5563 - 7.6561 * p);
    return FourierShape(std::move(a));
}

FourierShape random_seed_shape(int max_mode, std::mt19937_64& rng) {
    if (max_mode < 1) throw std::invalid_argument("random_seed_shape: max_mode must be >= 1");
    for (int attempt = 0; attempt < 100; ++attempt) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(max_mode + 1);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(max_mode);
        a[0] = 1.0;
        for (int k = 1; k <= max_mode; ++k) {
            std::uniform_real_distribution<double> coeff(-0.1 / k, 0.1 / k);
            a[k] = coeff(rng);
            b[k - 1] = coeff(rng);
        }
        FourierShape shape(std::move(a), std::move(b));
        if (shape.is_star_shaped()) return shape;
    }
    throw SeedInvalid("random_seed_shape: failed to draw a star-shaped seed");
}

OptimizationRun optimize(const ProblemSpec& spec, const FourierShape& seed) {
    if (spec.p < 1) throw std::invalid_argument("optimize: p must be >= 1");
    if (!seed.is_star_shaped()) throw SeedInvalid("optimize: seed is not star-shaped");

    const ActiveModes active = active_modes_for(spec);
    if (spec.mode == OptMode::Symmetric) {
        for (int k = 1; k <= seed.max_mode(); ++k) {
            const double bk = seed.sine_coeffs()[k - 1];
            const double ak = seed.cosine_coeffs()[k];
            if (std::abs(bk) > 1e-12 || (k % spec.p != 0 && std::abs(ak) > 1e-12))
                throw SeedInvalid("optimize: symmetric mode requires a p-fold cosine seed");
        }
    }

    OptimizationRun run;
    run.spec = spec;
    run.seed = seed;

    FourierShape current = pad_shape(seed, active.coeff_length);
    Evaluation eval = evaluate_shape(current, spec);
    run.spectrum_solves = 1;

    double radius = spec.initial_trust;
    run.history.push_back({0, eval.f, radius, eval.window, current});
    run.status = Termination::MaxIters;

    const Eigen::MatrixXd diff = fourier_diff_matrix(spec.resolved_n_nodes());
    double last_pred = std::numeric_limits<double>::infinity();

    for (int iter = 1; iter <= spec.max_iters; ++iter) {
        const ConstraintSet constraints = linearize_window(eval, spec, active, diff);
        const MinimaxStep step = minimax_step(constraints.values, constraints.G, radius);
        const double pred = step.t - eval.f;
        last_pred = pred;
        if (pred <= spec.stationarity_tol * (1.0 + std::abs(eval.f))) {
            run.status = Termination::Converged;
            break;
        }

        bool accepted = false;
        const FourierShape trial = apply_step(current, active, step.d);
        if (trial.is_star_shaped()) {
            try {
                Evaluation trial_eval = evaluate_shape(trial, spec);
                ++run.spectrum_solves;
                if (trial_eval.f > eval.f) {
                    const double ratio = (trial_eval.f - eval.f) / pred;
                    const bool at_boundary = step.d.cwiseAbs().maxCoeff() >= 0.9 * radius;
                    current = trial;
                    eval = std::move(trial_eval);
                    run.history.push_back({iter, eval.f, radius, eval.window, current});
                    accepted = true;
                    if (ratio > 0.7 && at_boundary)
                        radius = std::min(2.0 * radius, spec.max_trust);
                    else if (ratio < 0.25)
                        radius *= 0.5;
                }
            } catch (const SteklovError&) {
                // numerical failure on the trial shape: treat as rejection
            }
        }
        if (!accepted) radius *= 0.5;

        if (radius < spec.step_tol) {
            run.status = last_pred <= 10.0 * spec.stationarity_tol * (1.0 + std::abs(eval.f))
                             ? Termination::Converged
                             : Termination::Stalled;
            break;
        }
    }

    FourierShape final_shape = current;
    if (spec.mode == OptMode::Full) final_shape = gauge_rotated(final_shape);
    final_shape = final_shape.with_area(kPi);

    const Evaluation final_eval = evaluate_shape(final_shape, spec);
    ++run.spectrum_solves;
    run.final_shape = final_shape;
    run.final_lambdas = final_eval.spectrum.lambdas;
    run.final_Lambdas.resize(final_eval.spectrum.count());
    for (int j = 0; j < final_eval.spectrum.count(); ++j)
        run.final_Lambdas[j] = normalized_eigenvalue(final_eval.spectrum, j);
    run.best_value = final_eval.f;
    return run;
}

OptimizationRun optimize_best(const ProblemSpec& spec, const std::vector<FourierShape>& seeds, int jobs) {
    if (seeds.empty()) throw std::invalid_argument("optimize_best: need at least one seed");

    std::vector<OptimizationRun> runs(seeds.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < seeds.size(); ++i) runs[i] = optimize(spec, seeds[i]);
    } else {
        std::vector<std::future<OptimizationRun>> futures;
        futures.reserve(seeds.size());
        for (const FourierShape& seed : seeds)
            futures.push_back(std::async(std::launch::async, [&spec, seed] { return optimize(spec, seed); }));
        for (size_t i = 0; i < futures.size(); ++i) runs[i] = futures[i].get();
    }

    size_t best = 0;
    for (size_t i = 1; i < runs.size(); ++i)
        if (runs[i].best_value > runs[best].best_value) best = i;
    return runs[best];
}

ConjectureReport verify_conjecture(const OptimizationRun& run, double rel_tol) {
    ConjectureReport report;
    report.clusters = multiplicity_clusters(run.final_lambdas, rel_tol);
    report.gap = run.final_Lambdas[run.spec.p] - run.final_Lambdas[run.spec.p - 1];

    const FourierShape& shape = run.final_shape;
    double off_pattern = 0.0;
    for (int k = 1; k <= shape.max_mode(); ++k) {
        const double ak = shape.cosine_coeffs()[k];
        const double bk = shape.sine_coeffs()[k - 1];
        if (k % run.spec.p != 0) off_pattern += ak * ak + bk * bk;
    }
    report.pfold_residual = std::sqrt(off_pattern);
    report.axis_residual = shape.sine_coeffs().norm();
    return report;
}

} // namespace steklov
