#include "simptheta/sdp.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include "simptheta/errors.hpp"
#include "simptheta/linalg.hpp"

namespace simptheta::sdp {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Packed upper-triangle coordinates for every block, scaled so that the
// Euclidean inner product of two packed vectors equals the trace inner
// product of the matrices.
class SvecLayout {
 public:
  explicit SvecLayout(const std::vector<int>& sizes) : sizes_(sizes) {
    offsets_.reserve(sizes.size() + 1);
    offsets_.push_back(0);
    for (int d : sizes) offsets_.push_back(offsets_.back() + static_cast<Eigen::Index>(d) * (d + 1) / 2);
  }

  Eigen::Index total() const { return offsets_.back(); }
  Eigen::Index index(int block, int row, int col) const {
    if (row > col) std::swap(row, col);
    return offsets_[block] + static_cast<Eigen::Index>(col) * (col + 1) / 2 + row;
  }

  void pack(int block, const Eigen::MatrixXd& m, Eigen::VectorXd& out) const {
    Eigen::Index p = offsets_[block];
    for (int j = 0; j < sizes_[block]; ++j) {
      for (int i = 0; i < j; ++i) out(p++) = kSqrt2 * m(i, j);
      out(p++) = m(j, j);
    }
  }

  Eigen::MatrixXd unpack(int block, const Eigen::VectorXd& v) const {
    const int d = sizes_[block];
    Eigen::MatrixXd m(d, d);
    Eigen::Index p = offsets_[block];
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < j; ++i) m(i, j) = m(j, i) = v(p++) / kSqrt2;
      m(j, j) = v(p++);
    }
    return m;
  }

 private:
  std::vector<int> sizes_;
  std::vector<Eigen::Index> offsets_;
};

Constraint merged(const Constraint& c) {
  std::map<std::tuple<int, int, int>, double> acc;
  for (Term t : c.terms) {
    if (t.row > t.col) std::swap(t.row, t.col);
    acc[{t.block, t.row, t.col}] += t.value;
  }
  Constraint out;
  out.rhs = c.rhs;
  for (const auto& [key, v] : acc)
    if (v != 0.0) out.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
  return out;
}

double frobenius(const Constraint& c) {
  double s = 0.0;
  for (const Term& t : c.terms) s += (t.row == t.col ? 1.0 : 2.0) * t.value * t.value;
  return std::sqrt(s);
}

double round_key(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible_suspected: return "infeasible_suspected";
  }
  return "unknown";
}

void SdpProblem::validate() const {
  if (block_sizes.empty()) throw InputError("SDP has no blocks");
  if (objective.size() != block_sizes.size())
    throw InputError("SDP objective has " + std::to_string(objective.size()) + " blocks, expected " +
                     std::to_string(block_sizes.size()));
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    const int d = block_sizes[b];
    if (d <= 0) throw InputError("SDP block sizes must be positive");
    if (objective[b].rows() != d || objective[b].cols() != d)
      throw DimensionMismatch("SDP objective block " + std::to_string(b) + " has wrong shape");
    if (!objective[b].allFinite()) throw InputError("SDP objective is not finite");
    if ((objective[b] - objective[b].transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw InputError("SDP objective block " + std::to_string(b) + " is not symmetric");
  }
  if (constraints.empty()) throw InputError("SDP needs at least one constraint");
  for (const Constraint& c : constraints) {
    if (!std::isfinite(c.rhs)) throw InputError("SDP constraint rhs is not finite");
    for (const Term& t : c.terms) {
      if (t.block < 0 || t.block >= static_cast<int>(block_sizes.size()))
        throw InputError("SDP constraint refers to block " + std::to_string(t.block));
      const int d = block_sizes[t.block];
      if (t.row < 0 || t.col < 0 || t.row >= d || t.col >= d)
        throw InputError("SDP constraint index out of range");
      if (!std::isfinite(t.value)) throw InputError("SDP constraint coefficient is not finite");
    }
  }
}

std::vector<Constraint> canonicalize(const std::vector<Constraint>& constraints) {
  std::vector<Constraint> out;
  std::map<std::pair<std::vector<std::tuple<int, int, int, double>>, double>, int> seen;
  for (const Constraint& raw : constraints) {
    Constraint c = merged(raw);
    const double norm = frobenius(c);
    if (norm == 0.0) {
      // 0 = rhs: either vacuous or unsatisfiable; keep the latter so the
      // solver can flag it.
      if (c.rhs != 0.0) out.push_back(c);
      continue;
    }
    const double sign = c.terms.front().value < 0 ? -1.0 : 1.0;
    for (Term& t : c.terms) t.value *= sign / norm;
    c.rhs *= sign / norm;
    std::vector<std::tuple<int, int, int, double>> key;
    key.reserve(c.terms.size());
    for (const Term& t : c.terms) key.emplace_back(t.block, t.row, t.col, round_key(t.value));
    if (seen.emplace(std::make_pair(std::move(key), round_key(c.rhs)), 1).second) out.push_back(std::move(c));
  }
  return out;
}

double evaluate(const Constraint& c, const std::vector<Eigen::MatrixXd>& z) {
  double s = 0.0;
  for (const Term& t : c.terms) s += (t.row == t.col ? 1.0 : 2.0) * t.value * z[t.block](t.row, t.col);
  return s;
}

SolveReport solve(const SdpProblem& problem, const SolveParams& params) {
  problem.validate();
  if (params.tol <= 0 || params.max_iter <= 0 || params.rho <= 0)
    throw InputError("solver tolerances must be positive");

  const std::vector<Constraint> rows = canonicalize(problem.constraints);
  const SvecLayout layout(problem.block_sizes);
  const Eigen::Index dim = layout.total();
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  const int nblocks = static_cast<int>(problem.block_sizes.size());

  SolveReport report;
  report.constraints_used = static_cast<int>(m);

  // Unsatisfiable empty rows: nothing to iterate on.
  for (const Constraint& c : rows) {
    if (c.terms.empty()) {
      report.status = SolveStatus::infeasible_suspected;
      for (int d : problem.block_sizes) report.solution.push_back(Eigen::MatrixXd::Zero(d, d));
      report.primal_residual = std::abs(c.rhs);
      return report;
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b(i) = rows[i].rhs;
    for (const Term& t : rows[i].terms)
      trip.emplace_back(i, layout.index(t.block, t.row, t.col), t.row == t.col ? t.value : kSqrt2 * t.value);
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> a(m, dim);
  a.setFromTriplets(trip.begin(), trip.end());
  const Eigen::SparseMatrix<double, Eigen::ColMajor> at = a.transpose();

  // Internally minimize <c, x> with c = -objective, normalized to unit norm.
  Eigen::VectorXd c(dim);
  for (int blk = 0; blk < nblocks; ++blk) layout.pack(blk, -problem.objective[blk], c);
  const double c_scale = c.norm() > 0 ? c.norm() : 1.0;
  c /= c_scale;

  Eigen::SparseMatrix<double> normal = (a * at).eval();
  // Tiny ridge keeps the factorization defined if rows are dependent.
  for (Eigen::Index i = 0; i < m; ++i) normal.coeffRef(i, i) += 1e-12;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(normal);
  if (factor.info() != Eigen::Success) throw ComputeError("SDP normal system factorization failed");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd v(dim);
  double mu = params.rho;

  Eigen::VectorXd best_x = x, best_y = y;
  double best_score = std::numeric_limits<double>::infinity();
  double best_p = 0, best_d = 0;
  const double b_norm = b.norm();

  report.status = SolveStatus::max_iter;
  int it = 0;
  for (it = 1; it <= params.max_iter; ++it) {
    y = factor.solve(mu * (b - a * x) + a * (c - s));
    const Eigen::VectorXd aty = at * y;
    v = c - aty - mu * x;
    for (int blk = 0; blk < nblocks; ++blk) {
      const Eigen::MatrixXd vb = layout.unpack(blk, v);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(vb);
      const Eigen::VectorXd& lam = eig.eigenvalues();
      const Eigen::MatrixXd& q = eig.eigenvectors();
      const Eigen::MatrixXd sb = q * lam.cwiseMax(0.0).asDiagonal() * q.transpose();
      const Eigen::MatrixXd xb = q * ((-lam).cwiseMax(0.0) / mu).asDiagonal() * q.transpose();
      layout.pack(blk, sb, s);
      layout.pack(blk, xb, x);
    }

    if (it % params.check_every != 0 && it != params.max_iter) continue;
    const double pres = (a * x - b).norm() / (1.0 + b_norm);
    const double dres = (aty + s - c).norm() / 2.0;  // 1 + |c| with |c| = 1
    const double score = std::max(pres, dres);
    if (score < best_score) {
      best_score = score;
      best_x = x;
      best_y = y;
      best_p = pres;
      best_d = dres;
    }
    if (pres <= params.tol && dres <= params.tol) {
      report.status = SolveStatus::converged;
      break;
    }
    if (!y.allFinite() || y.norm() > 1e10 * (1.0 + b_norm)) {
      report.status = SolveStatus::infeasible_suspected;
      break;
    }
    if (params.adapt_rho) {
      if (pres > params.balance_ratio * dres)
        mu *= params.rho_factor;
      else if (dres > params.balance_ratio * pres)
        mu /= params.rho_factor;
      mu = std::clamp(mu, 1e-6, 1e6);
    }
  }
  report.iterations = std::min(it, params.max_iter);

  if (report.status != SolveStatus::converged) {
    x = best_x;
    y = best_y;
  } else {
    best_p = (a * x - b).norm() / (1.0 + b_norm);
    best_d = ((at * y) + s - c).norm() / 2.0;
  }
  report.dual_residual = best_d;
  (void)best_p;

  report.solution.reserve(nblocks);
  double value = 0.0;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int blk = 0; blk < nblocks; ++blk) {
    Eigen::MatrixXd xb = layout.unpack(blk, x);
    value += (problem.objective[blk].array() * xb.array()).sum();
    report.min_eigenvalue = std::min(report.min_eigenvalue, linalg::lambda_min(xb));
    report.solution.push_back(std::move(xb));
  }
  report.value = value;
  report.dual_value = -c_scale * b.dot(y);
  report.multipliers = y;
  double worst = 0.0;
  for (const Constraint& con : problem.constraints)
    worst = std::max(worst, std::abs(evaluate(con, report.solution) - con.rhs));
  report.primal_residual = worst;
  return report;
}

DualBound dual_eigenvalue_bound(const Eigen::MatrixXd& l, const Eigen::MatrixXd& t,
                                const std::vector<DualCondition>& conditions, double tol) {
  if (l.rows() != l.cols() || t.rows() != l.rows() || t.cols() != l.cols())
    throw DimensionMismatch("dual certificate has shape " + std::to_string(t.rows()) + "x" +
                            std::to_string(t.cols()) + ", expected " + std::to_string(l.rows()) +
                            "x" + std::to_string(l.cols()));
  DualBound out;
  for (const DualCondition& cond : conditions) {
    double s = 0.0;
    for (const auto& [i, j, coef] : cond.terms) s += coef * t(i, j);
    out.worst_violation = std::max(out.worst_violation, std::abs(s));
    if (std::abs(s) > tol)
      throw InputError("dual certificate violates " + cond.name + " (residual " + std::to_string(s) + ")");
  }
  out.value = linalg::lambda_max(l + t);
  return out;
}

void write_sdpa(std::ostream& out, const SdpProblem& problem) {
  problem.validate();
  out.precision(17);
  out << problem.constraints.size() << "\n" << problem.block_sizes.size() << "\n";
  for (std::size_t b = 0; b < problem.block_sizes.size(); ++b)
    out << (b ? " " : "") << problem.block_sizes[b];
  out << "\n";
  for (std::size_t i = 0; i < problem.constraints.size(); ++i)
    out << (i ? " " : "") << problem.constraints[i].rhs;
  out << "\n";
  for (std::size_t b = 0; b < problem.block_sizes.size(); ++b) {
    const Eigen::MatrixXd& c = problem.objective[b];
    for (int j = 0; j < c.cols(); ++j)
      for (int i = 0; i <= j; ++i)
        if (c(i, j) != 0.0) out << 0 << " " << b + 1 << " " << i + 1 << " " << j + 1 << " " << c(i, j) << "\n";
  }
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    const Constraint mc = merged(problem.constraints[k]);
    for (const Term& t : mc.terms)
      out << k + 1 << " " << t.block + 1 << " " << t.row + 1 << " " << t.col + 1 << " " << t.value << "\n";
  }
}

}  // namespace simptheta::sdp
