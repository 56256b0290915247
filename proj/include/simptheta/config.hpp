#pragma once

namespace simptheta {

// Every numerical threshold used by the library lives here. The CLI can
// override the solver-facing ones.
struct Tolerances {
  // SymMatrix construction rejects anything more asymmetric than this.
  double symmetry = 1e-12;
  // Numerical rank: eigenvalues above rank_rel * dim * max|eig| count.
  double rank_rel = 1e-8;
  // Cyclic Jacobi stops when off(A)_F <= jacobi_rel * |A|_F.
  double jacobi_rel = 1e-12;
  // Linear constraints on dual certificates are checked to this accuracy.
  double certificate = 1e-9;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace simptheta
