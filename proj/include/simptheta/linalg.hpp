#pragma once

#include <Eigen/Dense>

#include "simptheta/config.hpp"

namespace simptheta::linalg {

struct EigDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns are orthonormal eigenvectors
};

// Full symmetric eigendecomposition (tridiagonal QR backend). Rejects input
// whose asymmetry exceeds tol.symmetry * max(1, |A|_max).
EigDecomposition sym_eig(const Eigen::MatrixXd& a, const Tolerances& tol = kDefaultTolerances);

// Cyclic Jacobi rotations, dependency-free. Converges when the off-diagonal
// Frobenius norm drops below tol.jacobi_rel * |A|_F. Slower than sym_eig and
// used as an independent cross-check.
EigDecomposition jacobi_eig(const Eigen::MatrixXd& a, const Tolerances& tol = kDefaultTolerances);

// Nearest positive semidefinite matrix in Frobenius norm: V max(L, 0) V^T.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& a);

double lambda_max(const Eigen::MatrixXd& a);
double lambda_min(const Eigen::MatrixXd& a);

// Eigenvector for lambda_max (unit norm).
Eigen::VectorXd top_eigenvector(const Eigen::MatrixXd& a);

// Solve M x = b for symmetric positive definite M by Cholesky. Throws
// DimensionMismatch or NotPositiveDefinite.
Eigen::VectorXd solve_spd(const Eigen::MatrixXd& m, const Eigen::VectorXd& b);

// Number of eigenvalues above tol.rank_rel * dim * max|eigenvalue|.
int numerical_rank_sym(const Eigen::MatrixXd& a, const Tolerances& tol = kDefaultTolerances);

// Orthogonal projector onto the eigenspace of eigenvalues within `width` of
// `value`.
Eigen::MatrixXd eigenspace_projector(const Eigen::MatrixXd& a, double value, double width = 1e-6);

}  // namespace simptheta::linalg
