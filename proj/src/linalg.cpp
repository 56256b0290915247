#include "simptheta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "simptheta/errors.hpp"

namespace simptheta::linalg {

namespace {

void require_symmetric(const Eigen::MatrixXd& a, const Tolerances& tol) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("expected a square matrix, got " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
  if (a.size() == 0) return;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.symmetry * scale)
    throw InputError("matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
}

EigDecomposition sorted(Eigen::VectorXd values, Eigen::MatrixXd vectors) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
  EigDecomposition out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = values(order[i]);
    out.vectors.col(i) = vectors.col(order[i]);
  }
  return out;
}

}  // namespace

EigDecomposition sym_eig(const Eigen::MatrixXd& a, const Tolerances& tol) {
  require_symmetric(a, tol);
  if (a.size() == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw ComputeError("symmetric eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigDecomposition jacobi_eig(const Eigen::MatrixXd& input, const Tolerances& tol) {
  require_symmetric(input, tol);
  const Eigen::Index n = input.rows();
  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm = a.norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > tol.jacobi_rel * norm; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        // Rotation angle zeroing a(p,q) (Golub & Van Loan, sym.schur2).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index r = 0; r < n; ++r) {
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (n > 0 && off_norm() > tol.jacobi_rel * norm * 10)
    throw ComputeError("Jacobi eigensolver did not converge");
  return sorted(a.diagonal(), v);
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()));
  const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().transpose();
}

double lambda_max(const Eigen::MatrixXd& a) {
  const auto e = sym_eig(a);
  if (e.values.size() == 0) throw InputError("lambda_max of an empty matrix");
  return e.values(e.values.size() - 1);
}

double lambda_min(const Eigen::MatrixXd& a) {
  const auto e = sym_eig(a);
  if (e.values.size() == 0) throw InputError("lambda_min of an empty matrix");
  return e.values(0);
}

Eigen::VectorXd top_eigenvector(const Eigen::MatrixXd& a) {
  const auto e = sym_eig(a);
  if (e.values.size() == 0) throw InputError("top_eigenvector of an empty matrix");
  return e.vectors.col(e.values.size() - 1);
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& m, const Eigen::VectorXd& b) {
  if (m.rows() != m.cols() || m.rows() != b.size())
    throw DimensionMismatch("solve_spd: matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", right-hand side has " +
                            std::to_string(b.size()) + " entries");
  require_symmetric(m, kDefaultTolerances);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("solve_spd: matrix is not positive definite");
  return llt.solve(b);
}

int numerical_rank_sym(const Eigen::MatrixXd& a, const Tolerances& tol) {
  if (a.size() == 0) return 0;
  const Eigen::VectorXd ev = sym_eig(a, tol).values;
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  const double cut = tol.rank_rel * static_cast<double>(a.rows()) * top;
  return static_cast<int>((ev.array().abs() > cut).count());
}

Eigen::MatrixXd eigenspace_projector(const Eigen::MatrixXd& a, double value, double width) {
  const auto e = sym_eig(a);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (std::abs(e.values(i) - value) <= width) p += e.vectors.col(i) * e.vectors.col(i).transpose();
  return p;
}

}  // namespace simptheta::linalg
