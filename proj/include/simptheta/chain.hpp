#pragma once

#include <Eigen/Dense>
#include <vector>

#include "simptheta/complex.hpp"
#include "simptheta/config.hpp"

namespace simptheta {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Matrix of the coboundary delta_i in the elementary-cochain basis: rows are
// (i+1)-faces, columns are i-faces, entries are incidence numbers. Its
// transpose is the boundary map.
struct OperatorMatrix {
  FaceIndex rows;
  FaceIndex cols;
  IntMatrix entries;

  OperatorMatrix transpose() const { return {cols, rows, entries.transpose()}; }
};

// Dense real symmetric matrix whose two axes are labeled by the same faces.
class SymMatrix {
 public:
  SymMatrix() = default;
  // Throws InputError when max |A - A^T| exceeds tol.symmetry or when the
  // label count does not match.
  SymMatrix(FaceIndex labels, Eigen::MatrixXd values, const Tolerances& tol = kDefaultTolerances);
  SymMatrix(FaceIndex labels, const IntMatrix& values);

  const FaceIndex& labels() const { return labels_; }
  const Eigen::MatrixXd& values() const { return values_; }
  int size() const { return labels_.size(); }
  double operator()(int i, int j) const { return values_(i, j); }

 private:
  FaceIndex labels_;
  Eigen::MatrixXd values_;
};

// delta_i : C^i(X) -> C^{i+1}(X) for -1 <= i < k.
OperatorMatrix coboundary(const Complex& x, int i);
// partial_{i} = delta_{i-1}^T for 0 <= i <= k.
OperatorMatrix boundary(const Complex& x, int i);

// Operator-product Laplacians over X_i, exact.
// down: delta_{i-1} partial_i (i >= 0); up: partial_{i+1} delta_i (i < k).
IntMatrix down_laplacian_exact(const Complex& x, int i);
IntMatrix up_laplacian_exact(const Complex& x, int i);
SymMatrix down_laplacian(const Complex& x, int i);
SymMatrix up_laplacian(const Complex& x, int i);

// The same Laplacians from the closed entry formulas (diagonal i+1 / deg,
// off-diagonal +-epsilon). Kept separate so the two routes can be compared.
IntMatrix down_laplacian_formula(const FaceIndex& faces);
IntMatrix up_laplacian_formula(const Complex& x, int i);

// Down-Laplacian L_{k-1} of the complete complex K_n^k, indexed by every
// k-subset of [n]: diagonal k, off-diagonal epsilon.
SymMatrix complete_down_laplacian(int n, int k);

// Degree matrix and adjacency of X over X_{k-1}: L_up_{k-1}(X) = D - A.
IntMatrix degrees_exact(const Complex& x);
IntMatrix adjacency_exact(const Complex& x);
SymMatrix adjacency(const Complex& x);
SymMatrix degrees(const Complex& x);

// Embed a matrix indexed by a subset of faces into a larger index, padding
// with zero rows and columns.
Eigen::MatrixXd zero_pad(const SymMatrix& m, const FaceIndex& target);

// Ascending eigenvalues.
Eigen::VectorXd spectrum(const SymMatrix& m);

// Numerical rank of an integer operator (via eigenvalues of its Gram matrix).
int numerical_rank(const IntMatrix& m, const Tolerances& tol = kDefaultTolerances);

// Reduced Betti number dim H_i = dim ker delta_i - rank delta_{i-1}, 0 <= i <= k.
int betti(const Complex& x, int i, const Tolerances& tol = kDefaultTolerances);

// Pieces of the Hodge decomposition C^i = H_i + B^i + B_i by dimension.
struct HodgeDimensions {
  int cochains = 0;
  int harmonic = 0;
  int coboundaries = 0;  // im delta_{i-1}
  int boundaries = 0;    // im partial_{i+1}
};
HodgeDimensions hodge_dimensions(const Complex& x, int i, const Tolerances& tol = kDefaultTolerances);

}  // namespace simptheta
