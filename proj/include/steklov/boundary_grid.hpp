#ifndef STEKLOV_BOUNDARY_GRID_HPP
#define STEKLOV_BOUNDARY_GRID_HPP

#include <Eigen/Core>

#include "steklov/fourier_shape.hpp"

namespace steklov {

/// Nystrom nodes of a counterclockwise boundary parametrization x(t), t_i = 2*pi*i/n.
///
/// jac is the arc-length jacobian sqrt(rho^2 + rho'^2); ds = jac * dt, so the
/// trapezoid rule sum_i (2*pi/n) * jac_i * f_i integrates f over the boundary
/// with spectral accuracy.
struct BoundaryGrid {
    int n = 0;
    FourierShape shape; // generating shape, kept for downstream consumers
    Eigen::VectorXd t;
    Eigen::Matrix<double, Eigen::Dynamic, 2> x;
    Eigen::VectorXd jac;
    Eigen::Matrix<double, Eigen::Dynamic, 2> normal; // outward unit normal
    Eigen::VectorXd kappa;                           // signed curvature, +1/R on the ccw disk

    /// Trapezoid weight 2*pi/n (uniform in t).
    double weight() const;

    /// Quadrature perimeter sum_i weight * jac_i.
    double perimeter() const;

    /// Quadrature of a nodal function against arc length: sum_i weight * jac_i * f_i.
    double integrate(const Eigen::VectorXd& f) const;
};

/// Throws NonpositiveRadius or OddNodeCount; n must be even and >= 8.
BoundaryGrid build_grid(const FourierShape& shape, int n);

/// Perimeter by trapezoid quadrature on n nodes.
double perimeter(const FourierShape& shape, int n);

enum class ModeKind { Cosine, Sine };

/// One Fourier coefficient direction (a_k or b_k).
struct FourierMode {
    ModeKind kind = ModeKind::Cosine;
    int k = 0;
};

/// Normal velocity c = v . n of the boundary under a unit perturbation of the
/// given coefficient: c(t) = rho(t) * cos(k t) / sqrt(rho^2 + rho'^2) for a_k,
/// with sin(k t) for b_k.
Eigen::VectorXd perturbation_velocity(const FourierShape& shape, const BoundaryGrid& grid, FourierMode mode);

} // namespace steklov

#endif
