#ifndef STEKLOV_FOURIER_SHAPE_HPP
#define STEKLOV_FOURIER_SHAPE_HPP

#include <Eigen/Core>

namespace steklov {

/// Radius of a polar curve together with its first two angular derivatives.
struct RadiusJet {
    double rho;
    double drho;
    double ddrho;
};

/// Star-shaped planar domain with boundary radius
///   rho(theta) = sum_k a_k cos(k theta) + sum_k b_k sin(k theta).
///
/// Coefficients are stored as a_0..a_m and b_1..b_m (there is no b_0).
/// A shape is valid when rho stays strictly positive; validate() checks this
/// on a uniform grid of at least 16*m samples.
class FourierShape {
public:
    /// Unit disk.
    FourierShape();

    /// b may be empty (treated as zeros); otherwise b.size() must equal a.size()-1.
    FourierShape(Eigen::VectorXd a, Eigen::VectorXd b = {});

    static FourierShape disk(double radius);

    const Eigen::VectorXd& cosine_coeffs() const { return a_; }
    const Eigen::VectorXd& sine_coeffs() const { return b_; }

    /// Highest Fourier mode m.
    int max_mode() const { return static_cast<int>(a_.size()) - 1; }

    /// rho, rho', rho'' at one angle; exact trigonometric sums.
    RadiusJet radius(double theta) const;

    /// Minimum of rho over the positivity check grid.
    double min_radius() const;

    bool is_star_shaped() const { return min_radius() > 0.0; }

    /// Throws NonpositiveRadius if the boundary radius is not strictly positive.
    void validate() const;

    /// |Omega| in closed form (Parseval): pi*a_0^2 + (pi/2)*sum_{k>=1}(a_k^2+b_k^2).
    double area() const;

    /// d|Omega|/da_k: 2*pi*a_0 for k=0, pi*a_k for k>=1.
    double area_derivative_cos(int k) const;
    /// d|Omega|/db_k = pi*b_k.
    double area_derivative_sin(int k) const;

    /// Homothety by factor t > 0.
    FourierShape scaled(double t) const;

    /// Domain rotated counterclockwise by alpha: rho_new(theta) = rho(theta - alpha).
    FourierShape rotated(double alpha) const;

    /// Mirror image across the x-axis (b_k -> -b_k).
    FourierShape reflected() const;

    /// Dilated so that area() == target (default: area of the unit disk).
    FourierShape with_area(double target) const;

private:
    Eigen::VectorXd a_;
    Eigen::VectorXd b_;
};

/// Spec-level alias: evaluate rho and derivatives.
inline RadiusJet evaluate_radius(const FourierShape& shape, double theta) {
    return shape.radius(theta);
}

inline double area(const FourierShape& shape) { return shape.area(); }

} // namespace steklov

#endif
