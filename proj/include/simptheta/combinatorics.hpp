#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simptheta/complex.hpp"

namespace simptheta {

struct IndependentSet {
  int size = 0;
  std::vector<int> witness;  // sorted
};

// Exact alpha(X) by branch and bound over vertices; n <= 64.
IndependentSet alpha(const Complex& x);

struct Coloring {
  int colors = 0;
  std::vector<int> color;  // per vertex
};

// Weak chromatic number: fewest colors with no monochromatic k-face.
Coloring chi_weak(const Complex& x);

// Chromatic number of the 1-skeleton X_1 (for k = 1 this is chi_weak).
Coloring chi_skeleton(const Complex& x);

// A homomorphism X -> X' of k-complexes with the orientations witnessing
// [H' : f(F)] = [H : F]. Signs are relative to the orientation induced by the
// vertex order: +1 keeps it, -1 flips it.
struct Homomorphism {
  std::map<Face, Face> f;           // X_{k-1} -> X'_{k-1}
  std::map<Face, Face> assignment;  // X_k -> X'_k
  std::map<Face, int> source_signs;  // k- and (k-1)-faces of X
  std::map<Face, int> target_signs;  // k- and (k-1)-faces of X'
};

struct HomomorphismCheck {
  bool facet_condition = false;        // (1): facets of H go onto the facets of some H'
  bool orientation_condition = false;  // (2): a consistent orientation exists
  std::string reason;                  // first failure, empty on success
  Homomorphism witness;                // filled when both hold

  bool ok() const { return facet_condition && orientation_condition; }
};

// Checks (1) directly and solves (2) as a linear system over GF(2). When
// `assignment` is empty it is derived from f. Throws InputError on malformed
// maps (missing faces, images outside X'_{k-1}, dimension mismatch).
HomomorphismCheck check_homomorphism(const Complex& x, const Complex& target,
                                     const std::map<Face, Face>& f,
                                     const std::map<Face, Face>& assignment = {});

// Homomorphism X -> K_l^k induced by a proper coloring of X_1 with l colors.
std::map<Face, Face> lift_coloring(const Complex& x, const std::vector<int>& color);

enum class ChiKStatus { found, budget_exhausted };

struct ChiKResult {
  ChiKStatus status = ChiKStatus::found;
  int value = 0;            // chi_k when found; otherwise the best known upper bound
  int lower_bound = 0;      // every l below this was refuted
  std::int64_t nodes = 0;
  Homomorphism witness;     // into K_value^k
};

// Smallest l with a homomorphism X -> K_l^k. Tries l = k+1, k+2, ... below
// chi(X_1), which is always attained by lifting a coloring. The node budget
// bounds the total backtracking work.
ChiKResult chi_k(const Complex& x, std::int64_t node_budget = 20'000'000);

// max over connected components C of chi(C_1).
int component_chromatic_bound(const Complex& x);

struct RegularCheck {
  bool regular = false;
  int degree = 0;
  double lambda_max = 0.0;  // of L_up_{k-1}(X)
  bool applicable = false;  // chi_k == k+1
  bool holds = true;
};

// If chi_k(X) = k+1 then lambda_max(L_up_{k-1}) = (k+1) d. Throws InputError
// for non-regular complexes. A vacuous premise counts as holding.
RegularCheck regular_eigenvalue_check(const Complex& x, int chi_k_value, double tol = 1e-6);

}  // namespace simptheta
