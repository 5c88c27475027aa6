#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "steklov/errors.hpp"
#include "steklov/optimizer.hpp"

using namespace steklov;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("expected multiplicity of the optimal p-th eigenvalue") {
    CHECK(expected_multiplicity(1) == 2);
    CHECK(expected_multiplicity(2) == 2);
    CHECK(expected_multiplicity(3) == 3);
    CHECK(expected_multiplicity(4) == 2);
    CHECK(expected_multiplicity(9) == 3);
    CHECK(expected_multiplicity(10) == 2);
    CHECK_THROWS_AS(expected_multiplicity(0), std::invalid_argument);
}

TEST_CASE("interpolated seed coefficients") {
    const FourierShape s50 = interp_seed(50);
    CHECK(s50.cosine_coeffs()[50] == doctest::Approx(1.0 / 17.4015).epsilon(1e-12));
    CHECK(s50.cosine_coeffs()[0] == doctest::Approx(2.5));

    const FourierShape s10 = interp_seed(10);
    CHECK(s10.cosine_coeffs()[10] == doctest::Approx(1.0 / 3.6255).epsilon(1e-12));

    const FourierShape s2 = interp_seed(2);
    CHECK(s2.cosine_coeffs()[6] < 0.0); // third coefficient has a negative fit for every p

    CHECK_THROWS_AS(interp_seed(1), std::invalid_argument);
}

TEST_CASE("symmetric-mode optimization reproduces the p=2 maximizer") {
    ProblemSpec spec;
    spec.p = 2;
    spec.mode = OptMode::Symmetric;
    const OptimizationRun run = optimize(spec, interp_seed(2));

    CHECK(run.status == Termination::Converged);
    CHECK(run.best_value == doctest::Approx(2.91496429809).epsilon(1e-6));

    // accepted iterates never decrease the min-window value
    for (size_t i = 1; i < run.history.size(); ++i)
        CHECK(run.history[i].min_window >= run.history[i - 1].min_window - 1e-14);

    // every accepted iterate is feasible
    for (const IterateRecord& rec : run.history) CHECK(rec.shape.is_star_shaped());

    // final shape is area-normalized and stays in the symmetric family
    CHECK(run.final_shape.area() == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(run.final_shape.sine_coeffs().norm() == 0.0);
    for (int k = 1; k <= run.final_shape.max_mode(); ++k)
        if (k % 2 != 0) CHECK(run.final_shape.cosine_coeffs()[k] == 0.0);

    const ConjectureReport report = verify_conjecture(run);
    CHECK(report.gap > 1.0);
    CHECK(report.pfold_residual < 1e-12);
    CHECK(report.axis_residual < 1e-12);

    // lambda_2 = lambda_3 cluster at the maximizer
    bool found_pair = false;
    for (const auto& cluster : report.clusters)
        if (cluster.size() == 2 && cluster[0] == 2 && cluster[1] == 3) found_pair = true;
    CHECK(found_pair);

    // HPS bound along the way
    const BoundaryGrid grid = build_grid(run.final_shape, 128);
    CHECK(run.final_lambdas[2] * grid.perimeter() <= 2.0 * kPi * 2 + 1e-6);
}

TEST_CASE("full-mode optimization from a random seed finds the disk for p=1") {
    ProblemSpec spec;
    spec.p = 1;
    std::mt19937_64 rng(2024);
    const OptimizationRun run = optimize(spec, random_seed_shape(spec.resolved_max_mode(), rng));
    CHECK(run.best_value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-5));
    const ConjectureReport report = verify_conjecture(run);
    CHECK(report.pfold_residual < 1e-3); // p=1: every mode is a multiple, residual is 0 by definition
    CHECK(report.axis_residual < 1e-3);  // near-disk: all oscillatory coefficients are tiny
}

TEST_CASE("scale invariance of the optimization") {
    ProblemSpec spec;
    spec.p = 2;
    spec.mode = OptMode::Symmetric;
    const OptimizationRun base = optimize(spec, interp_seed(2));
    const OptimizationRun doubled = optimize(spec, interp_seed(2).scaled(2.0));
    CHECK(base.best_value == doctest::Approx(doubled.best_value).epsilon(1e-6));
}

TEST_CASE("seed validation") {
    ProblemSpec spec;
    spec.p = 2;
    Eigen::VectorXd bad(2);
    bad << 0.1, 1.0;
    CHECK_THROWS_AS(optimize(spec, FourierShape(bad)), SeedInvalid);

    spec.mode = OptMode::Symmetric;
    Eigen::VectorXd asym = Eigen::VectorXd::Zero(7);
    asym[0] = 1.0;
    asym[1] = 0.05; // not a multiple of p=2
    CHECK_THROWS_AS(optimize(spec, FourierShape(asym)), SeedInvalid);

    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(random_seed_shape(0, rng), std::invalid_argument);
}

TEST_CASE("iteration budget is honored") {
    ProblemSpec spec;
    spec.p = 2;
    spec.mode = OptMode::Symmetric;
    spec.max_iters = 1;
    const OptimizationRun run = optimize(spec, interp_seed(2));
    CHECK(run.status == Termination::MaxIters);
    CHECK(run.history.size() <= 2);
    CHECK(run.final_Lambdas.size() == spec.eigen_count());
}

TEST_CASE("restart driver returns the best run") {
    ProblemSpec spec;
    spec.p = 1;
    spec.max_iters = 40;
    std::mt19937_64 rng(7);
    std::vector<FourierShape> seeds;
    for (int i = 0; i < 3; ++i) seeds.push_back(random_seed_shape(spec.resolved_max_mode(), rng));
    const OptimizationRun best = optimize_best(spec, seeds, 3);
    for (const FourierShape& seed : seeds) {
        const OptimizationRun single = optimize(spec, seed);
        CHECK(best.best_value >= single.best_value - 1e-12);
    }
}

TEST_CASE("problem spec defaults") {
    ProblemSpec spec;
    spec.p = 10;
    CHECK(spec.resolved_m_window() == 2);
    CHECK(spec.resolved_n_nodes() == 128); // 6*10*2 = 120, floored to 128
    CHECK(spec.resolved_max_mode() == 25);
    spec.p = 11;
    CHECK(spec.resolved_m_window() == 3);
    CHECK(spec.resolved_n_nodes() == 198);
    spec.n_nodes = 200;
    CHECK(spec.resolved_n_nodes() == 200);
}
