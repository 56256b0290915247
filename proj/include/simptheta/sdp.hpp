#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace simptheta::sdp {

// One coefficient of a constraint matrix. Off-diagonal terms (row < col)
// stand for the symmetric pair, so <A, Z> picks up 2 * value * Z(row, col).
struct Term {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// <A_i, Z> = rhs
struct Constraint {
  std::vector<Term> terms;
  double rhs = 0.0;
};

// sup <C, Z> over block-diagonal Z >= 0 subject to linear equalities.
struct SdpProblem {
  std::vector<int> block_sizes;
  std::vector<Eigen::MatrixXd> objective;  // one symmetric matrix per block
  std::vector<Constraint> constraints;

  // Throws InputError on inconsistent sizes, bad indices, non-finite data or
  // an empty constraint list.
  void validate() const;
};

enum class SolveStatus { converged, max_iter, infeasible_suspected };
std::string to_string(SolveStatus s);

struct SolveParams {
  double tol = 1e-7;       // relative primal and dual residual target
  int max_iter = 200000;
  double rho = 1.0;        // initial penalty
  bool adapt_rho = true;   // residual balancing
  double balance_ratio = 10.0;
  double rho_factor = 2.0;
  int check_every = 10;
};

struct SolveReport {
  double value = 0.0;       // <C, Z> at the returned (PSD) iterate
  double dual_value = 0.0;  // dual objective at the returned multipliers
  std::vector<Eigen::MatrixXd> solution;
  Eigen::VectorXd multipliers;     // y for the canonical constraint rows
  double primal_residual = 0.0;    // max_i |<A_i, Z> - c_i| in the caller's scaling
  double dual_residual = 0.0;      // relative |A^T y + S - C|
  double min_eigenvalue = 0.0;     // smallest eigenvalue over all blocks
  int iterations = 0;
  int constraints_used = 0;        // after deduplication
  SolveStatus status = SolveStatus::max_iter;
};

// ADMM on the dual: (a) multiplier update through the prefactored normal
// system A A^T, (b) PSD projection per block, (c) primal update. Returns the
// cone-feasible iterate. Deterministic.
SolveReport solve(const SdpProblem& problem, const SolveParams& params = {});

// Scale every constraint to unit Frobenius norm, fix the sign of its first
// term, merge duplicate coefficients and drop exact duplicates.
std::vector<Constraint> canonicalize(const std::vector<Constraint>& constraints);

// <A, Z> for a single constraint.
double evaluate(const Constraint& c, const std::vector<Eigen::MatrixXd>& z);

// A linear condition sum_t coeff_t * T(row_t, col_t) = 0 on a dual
// certificate (entries are read as written, no symmetric doubling).
struct DualCondition {
  std::string name;
  std::vector<std::tuple<int, int, double>> terms;
};

struct DualBound {
  double value = 0.0;  // lambda_max(L + T)
  double worst_violation = 0.0;
};

// Weak-duality bound lambda_max(L + T) after checking every condition to
// `tol`. Throws InputError naming the first violated condition.
DualBound dual_eigenvalue_bound(const Eigen::MatrixXd& l, const Eigen::MatrixXd& t,
                                const std::vector<DualCondition>& conditions, double tol = 1e-9);

// SDPA sparse layout: constraint count, block count, block sizes, rhs vector,
// then "matrix block row col value" lines (matrix 0 is the objective,
// 1-based indices, upper triangle).
void write_sdpa(std::ostream& out, const SdpProblem& problem);

}  // namespace simptheta::sdp
