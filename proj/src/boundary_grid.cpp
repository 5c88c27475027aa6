#include "steklov/boundary_grid.hpp"
#include "steklov/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace steklov {

namespace {
constexpr double kPi = std::numbers::pi;
}

double BoundaryGrid::weight() const { return 2.0 * kPi / n; }

double BoundaryGrid::perimeter() const { return weight() * jac.sum(); }

double BoundaryGrid::integrate(const Eigen::VectorXd& f) const {
    return weight() * jac.dot(f);
}

BoundaryGrid build_grid(const FourierShape& shape, int n) {
    if (n < 8 || n % 2 != 0)
        throw OddNodeCount("build_grid: node count must be even and >= 8, got " + std::to_string(n));

    BoundaryGrid grid;
    grid.n = n;
    grid.shape = shape;
    grid.t.resize(n);
    grid.x.resize(n, 2);
    grid.jac.resize(n);
    grid.normal.resize(n, 2);
    grid.kappa.resize(n);

    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        const auto [rho, drho, ddrho] = shape.radius(t);
        if (rho <= 0.0)
            throw NonpositiveRadius("build_grid: rho(t) <= 0 at t = " + std::to_string(t));

        const double ct = std::cos(t);
        const double st = std::sin(t);
        const double jac = std::sqrt(rho * rho + drho * drho);

        grid.t[i] = t;
        grid.x(i, 0) = rho * ct;
        grid.x(i, 1) = rho * st;
        grid.jac[i] = jac;

        // x'(t) = (drho*ct - rho*st, drho*st + rho*ct); outward normal = (x2', -x1')/|x'|
        const double dx1 = drho * ct - rho * st;
        const double dx2 = drho * st + rho * ct;
        grid.normal(i, 0) = dx2 / jac;
        grid.normal(i, 1) = -dx1 / jac;

        grid.kappa[i] = (rho * rho + 2.0 * drho * drho - rho * ddrho) / (jac * jac * jac);
    }
    // rho can dip below zero between nodes; validate() samples a finer grid
    shape.validate();
    return grid;
}

double perimeter(const FourierShape& shape, int n) {
    return build_grid(shape, n).perimeter();
}

Eigen::VectorXd perturbation_velocity(const FourierShape& shape, const BoundaryGrid& grid, FourierMode mode) {
    Eigen::VectorXd c(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double t = grid.t[i];
        const double trig = mode.kind == ModeKind::Cosine ? std::cos(mode.k * t) : std::sin(mode.k * t);
        c[i] = shape.radius(t).rho * trig / grid.jac[i];
    }
    return c;
}

} // namespace steklov
