#ifndef STEKLOV_QZ_HPP
#define STEKLOV_QZ_HPP

#include <Eigen/Core>

namespace steklov {

/// Raw output of the generalized Schur (QZ) decomposition of (A, B):
/// eigenvalues are (alpha_re + i alpha_im) / beta; conjugate pairs share
/// adjacent columns of vr holding real and imaginary parts.
struct QzResult {
    Eigen::VectorXd alpha_re;
    Eigen::VectorXd alpha_im;
    Eigen::VectorXd beta;
    Eigen::MatrixXd vr;
};

/// Dense real QZ via LAPACK dggev, right eigenvectors only.
/// Throws EigendecompositionFailure on backend failure.
QzResult qz_solve(Eigen::MatrixXd A, Eigen::MatrixXd B);

} // namespace steklov

#endif
