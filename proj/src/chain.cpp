#include "simptheta/chain.hpp"

#include <cmath>
#include <string>

#include "simptheta/errors.hpp"
#include "simptheta/linalg.hpp"

namespace simptheta {

SymMatrix::SymMatrix(FaceIndex labels, Eigen::MatrixXd values, const Tolerances& tol)
    : labels_(std::move(labels)), values_(std::move(values)) {
  if (values_.rows() != labels_.size() || values_.cols() != labels_.size())
    throw DimensionMismatch("SymMatrix: " + std::to_string(labels_.size()) + " labels for a " +
                            std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()) +
                            " matrix");
  if (values_.size() > 0) {
    const double asym = (values_ - values_.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol.symmetry)
      throw InputError("SymMatrix: asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
}

SymMatrix::SymMatrix(FaceIndex labels, const IntMatrix& values)
    : SymMatrix(std::move(labels), Eigen::MatrixXd(values.cast<double>())) {}

OperatorMatrix coboundary(const Complex& x, int i) {
  if (i < -1 || i >= x.k())
    throw InputError("coboundary index " + std::to_string(i) + " outside -1.." +
                     std::to_string(x.k() - 1));
  const FaceIndex& rows = x.faces(i + 1);
  const FaceIndex& cols = x.faces(i);
  IntMatrix m = IntMatrix::Zero(rows.size(), cols.size());
  for (int r = 0; r < rows.size(); ++r) {
    const Face& h = rows[r];
    for (std::size_t skip = 0; skip < h.size(); ++skip) {
      Face f;
      for (std::size_t t = 0; t < h.size(); ++t)
        if (t != skip) f.push_back(h[t]);
      m(r, cols.at(f)) = (skip % 2 == 0) ? 1 : -1;
    }
  }
  return {rows, cols, std::move(m)};
}

OperatorMatrix boundary(const Complex& x, int i) {
  if (i < 0 || i > x.k())
    throw InputError("boundary index " + std::to_string(i) + " outside 0.." + std::to_string(x.k()));
  return coboundary(x, i - 1).transpose();
}

IntMatrix down_laplacian_exact(const Complex& x, int i) {
  if (i < 0 || i > x.k())
    throw InputError("down-Laplacian index " + std::to_string(i) + " outside 0.." +
                     std::to_string(x.k()));
  const OperatorMatrix d = coboundary(x, i - 1);
  return d.entries * d.entries.transpose();
}

IntMatrix up_laplacian_exact(const Complex& x, int i) {
  if (i < -1 || i >= x.k())
    throw InputError("up-Laplacian index " + std::to_string(i) + " outside -1.." +
                     std::to_string(x.k() - 1));
  const OperatorMatrix d = coboundary(x, i);
  return d.entries.transpose() * d.entries;
}

SymMatrix down_laplacian(const Complex& x, int i) {
  return SymMatrix(x.faces(i), down_laplacian_exact(x, i));
}

SymMatrix up_laplacian(const Complex& x, int i) {
  return SymMatrix(x.faces(i), up_laplacian_exact(x, i));
}

IntMatrix down_laplacian_formula(const FaceIndex& faces) {
  const int n = faces.size();
  IntMatrix m = IntMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    m(a, a) = static_cast<long long>(faces[a].size());
    for (int b = a + 1; b < n; ++b) m(a, b) = m(b, a) = epsilon(faces[a], faces[b]);
  }
  return m;
}

IntMatrix up_laplacian_formula(const Complex& x, int i) {
  if (i < -1 || i >= x.k())
    throw InputError("up-Laplacian index " + std::to_string(i) + " outside -1.." +
                     std::to_string(x.k() - 1));
  const FaceIndex& faces = x.faces(i);
  const FaceIndex& upper = x.faces(i + 1);
  const int n = faces.size();
  IntMatrix m = IntMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    m(a, a) = x.degree(faces[a]);
    for (int b = a + 1; b < n; ++b) {
      const Face u = face_union(faces[a], faces[b]);
      if (u.size() == faces[a].size() + 1 && upper.contains(u))
        m(a, b) = m(b, a) = -epsilon(faces[a], faces[b]);
    }
  }
  return m;
}

SymMatrix complete_down_laplacian(int n, int k) {
  if (k < 1 || n < k)
    throw InputError("complete down-Laplacian needs n >= k >= 1 (got n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ")");
  FaceIndex idx = FaceIndex::all(n, k);
  IntMatrix m = down_laplacian_formula(idx);
  return SymMatrix(std::move(idx), m);
}

IntMatrix degrees_exact(const Complex& x) {
  const FaceIndex& faces = x.faces(x.k() - 1);
  IntMatrix d = IntMatrix::Zero(faces.size(), faces.size());
  for (int a = 0; a < faces.size(); ++a) d(a, a) = x.degree(faces[a]);
  return d;
}

IntMatrix adjacency_exact(const Complex& x) {
  return degrees_exact(x) - up_laplacian_exact(x, x.k() - 1);
}

SymMatrix adjacency(const Complex& x) { return SymMatrix(x.faces(x.k() - 1), adjacency_exact(x)); }

SymMatrix degrees(const Complex& x) { return SymMatrix(x.faces(x.k() - 1), degrees_exact(x)); }

Eigen::MatrixXd zero_pad(const SymMatrix& m, const FaceIndex& target) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(target.size(), target.size());
  std::vector<int> pos(m.size());
  for (int i = 0; i < m.size(); ++i) pos[i] = target.at(m.labels()[i]);
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out(pos[i], pos[j]) = m(i, j);
  return out;
}

Eigen::VectorXd spectrum(const SymMatrix& m) { return linalg::sym_eig(m.values()).values; }

int numerical_rank(const IntMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  const IntMatrix gram = m.rows() <= m.cols() ? IntMatrix(m * m.transpose())
                                              : IntMatrix(m.transpose() * m);
  return linalg::numerical_rank_sym(gram.cast<double>(), tol);
}

int betti(const Complex& x, int i, const Tolerances& tol) {
  const HodgeDimensions h = hodge_dimensions(x, i, tol);
  return h.cochains - h.boundaries - h.coboundaries;
}

HodgeDimensions hodge_dimensions(const Complex& x, int i, const Tolerances& tol) {
  if (i < 0 || i > x.k())
    throw InputError("Hodge index " + std::to_string(i) + " outside 0.." + std::to_string(x.k()));
  HodgeDimensions h;
  h.cochains = x.faces(i).size();
  h.coboundaries = numerical_rank(coboundary(x, i - 1).entries, tol);
  h.boundaries = i < x.k() ? numerical_rank(coboundary(x, i).entries, tol) : 0;
  // Harmonic part measured independently as the kernel of the full Laplacian.
  IntMatrix lap = down_laplacian_exact(x, i);
  if (i < x.k()) lap += up_laplacian_exact(x, i);
  h.harmonic = h.cochains - linalg::numerical_rank_sym(lap.cast<double>(), tol);
  return h;
}

}  // namespace simptheta
