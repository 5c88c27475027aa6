#ifndef STEKLOV_NYSTROM_HPP
#define STEKLOV_NYSTROM_HPP

#include <Eigen/Core>

#include "steklov/boundary_grid.hpp"

namespace steklov {

/// Dense Nystrom discretizations of the Neumann-trace operator A and the
/// Dirichlet-trace operator B of the single-layer eigenfunction representation
///   u(x) = int Phi(x-y) (phi(y) - mean(phi)) ds(y) + mean(phi),
/// Phi(x) = (1/2pi) log|x|. The Steklov problem becomes A X = Lambda B X.
struct OperatorPair {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    BoundaryGrid grid;
};

/// Kress product-quadrature weights for the periodic log kernel: returns the
/// circulant generator R with
///   int_0^{2pi} ln(4 sin^2((t_i - tau)/2)) f(tau) dtau ~= sum_j R[(i-j) mod n] f(t_j),
/// exact for trigonometric polynomials of degree < n/2.
Eigen::VectorXd kress_log_weights(int n);

/// Rank-one averaging projector: (P phi)_i = mean(phi) w.r.t. arc length.
/// P 1 = 1 exactly and P^2 = P.
Eigen::MatrixXd mean_projector(const BoundaryGrid& grid);

/// Single-layer boundary trace S: phi -> int Phi(x-y) phi(y) ds(y).
/// The logarithmic singularity is split off and integrated with the Kress
/// weights; the smooth remainder goes through the trapezoid rule.
Eigen::MatrixXd assemble_single_layer(const BoundaryGrid& grid);

/// Normal-derivative kernel K: phi -> int [dPhi(x-y)/dn(x)] phi(y) ds(y).
/// Smooth on smooth curves; diagonal limit kappa/(4pi).
Eigen::MatrixXd assemble_normal_derivative(const BoundaryGrid& grid);

/// A = (K - I/2)(I - P), the interior Neumann trace of the representation;
/// B = S(I - P) + P, its Dirichlet trace. A 1 = 0 and B 1 = 1 exactly.
OperatorPair assemble_pair(const BoundaryGrid& grid);

} // namespace steklov

#endif
