#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simptheta/chain.hpp"
#include "simptheta/complex.hpp"
#include "simptheta/errors.hpp"
#include "simptheta/sdp.hpp"

namespace simptheta {

// All pairs (F, F') of rows whose union is the same admissible set H. The
// first pair is the lexicographically smallest and serves as representative.
struct SymmetryClass {
  Face union_set;
  std::vector<std::pair<int, int>> pairs;  // row indices, first < second
};

// The level-l theta program over rows Ind_{l-1}:
//   sup <L, Y>  s.t.  Y >= 0, tr Y = 1,
//   Y(F,F') = 0 when F u F' is too large or is a non-independent (l+1)-set,
//   eps(F,F') Y(F,F') constant over each symmetry class.
// At l = k the rows are all k-subsets and L is the complete down-Laplacian.
struct ThetaInstance {
  int n = 0;
  int k = 0;
  int level = 0;
  FaceIndex rows;     // Ind_{level-1}
  FaceIndex unions;   // Ind_level: admissible supports of off-diagonal entries
  std::vector<std::pair<int, int>> zero_pairs;
  std::vector<SymmetryClass> symmetry_classes;
  SymMatrix objective;  // L_down_{level-1}(Ind)

  std::vector<sdp::Constraint> constraints() const;
  sdp::SdpProblem to_problem() const;
  // Linear conditions a dual certificate T must satisfy: zero diagonal and
  // sum_{F u F' = H} eps T(F,F') = 0 for every H in `unions`.
  std::vector<sdp::DualCondition> dual_conditions() const;
};

ThetaInstance build_theta_k(const Complex& x);
// Throws InputError unless k <= level and Ind_{level-1} is non-empty
// (equivalently level <= alpha(X)).
ThetaInstance build_theta_ell(const Complex& x, int level);

struct ThetaResult {
  int level = 0;
  bool hat = false;
  double value = 0.0;
  // Smallest weak-duality bound from the certificates that are always
  // available (T = 0, and Golubev's T on complete skeletons at level k).
  double upper_bracket = 0.0;
  sdp::SolveReport report;
};

ThetaResult theta_k(const Complex& x, const sdp::SolveParams& params = {});
ThetaResult theta_ell(const Complex& x, int level, const sdp::SolveParams& params = {});

// Lovasz theta of a graph from its own program (all-ones objective, zeros on
// edges). Independent of the theta_k route.
double lovasz_theta(const Graph& g, const sdp::SolveParams& params = {});
sdp::SolveReport lovasz_theta_report(const Graph& g, const sdp::SolveParams& params = {});

// Hoffman ratio bound -n lambda_min(A) / (d - lambda_min(A)). Throws for
// non-regular graphs; an edgeless graph gives n.
double ratio_bound(const Graph& g);

struct GolubevBound {
  double value = 0.0;
  bool complete_skeleton_form = false;
  std::vector<int> min_degrees;     // d_0 .. d_{k-1}
  std::vector<double> max_up_eigs;  // mu_0 .. mu_{k-1}
};
// n(1 - (d_0+1)(d_1+2)...(d_{k-2}+k-1) d_{k-1} / (mu_0...mu_{k-1})), or the
// simplified n(1 - d_{k-1}/mu_{k-1}) on complete skeletons. Vacuous (n) when
// X is empty.
GolubevBound golubev_bound(const Complex& x);

// k * max over (k-2)-faces K of theta(lk_X(K)). Requires a complete
// (k-1)-skeleton; the empty complex counts as having one. Random samples
// carry a complete skeleton by definition even when some (k-1)-face lies in
// no k-face, so callers may assert it with `assume_complete_skeleton`.
double link_bound(const Complex& x, const sdp::SolveParams& params = {},
                  bool assume_complete_skeleton = false);

// lk_X(K) over the complete (k-1)-skeleton: every vertex outside K, edges
// {v,w} with K+v+w in X_k. Agrees with link() on complete skeletons.
Link full_link(const Complex& x, const Face& k_minus_two_set);

// lambda_max(J - A/p), a dual-feasible theta bound for any graph.
double juhasz_certificate(const Graph& g, double p);

// Weak-duality bound lambda_max(L + T) for a level-k certificate over all
// k-subsets. Throws InputError if T violates a dual condition.
sdp::DualBound theta_dual_bound(const Complex& x, const Eigen::MatrixXd& t, double tol = 1e-9);

// T = gamma (L_up_{k-1}(X) - D(X)) with gamma = n / lambda_max(L_up_{k-1}(X)),
// zero-padded to all k-subsets.
Eigen::MatrixXd golubev_certificate(const Complex& x);

// T = 2m (P_up_{3m} + P_up_{2m} + P_down_{3m}) - L_down_1(X) for
// X = K_{m,m,m}^2, with spectral projectors of X's own Laplacians,
// zero-padded to all 2-subsets.
Eigen::MatrixXd tripartite_certificate(int m);

// Feasible-point lower bound l(1 + (l+1)|Ind_l| / (-lambda_min(A) |Ind_{l-1}|))
// where A is the adjacency of the l-skeleton of Ind over Ind_{l-1}. At l = k
// this is the bound from the complement's adjacency over all k-subsets.
double spectral_lower_bound(const Complex& x, int level);

// ---------------------------------------------------------------------------
// Hierarchy vectors and the tau maps.
//
// A level-l vector lives on Ind_{l-1} (low) and Ind_l (high); it encodes the
// structured matrix Y(F,F) = low(F), Y(F,F') = eps(F,F') high(F u F').

template <class S>
struct HierarchyVector {
  int level = 0;
  std::vector<S> low;   // indexed by Ind_{level-1}
  std::vector<S> high;  // indexed by Ind_level
};

template <class S>
using DenseMatrix = std::vector<std::vector<S>>;

// Multiply by num/den in the scalar's own arithmetic.
template <class S>
S scaled(const S& v, long long num, long long den) {
  return v * S(num) / S(den);
}

namespace detail {
void require_levels(const IndependenceComplex& ind, int level);
}  // namespace detail

template <class S>
HierarchyVector<S> zero_vector(const IndependenceComplex& ind, int level) {
  detail::require_levels(ind, level);
  return {level, std::vector<S>(ind.at(level - 1).size(), S(0)),
          std::vector<S>(ind.at(level).size(), S(0))};
}

// y^S: low(F) = level for F inside S, high(H) = 1 for H inside S.
template <class S>
HierarchyVector<S> indicator_vector(const IndependenceComplex& ind, int level,
                                    const std::vector<int>& set) {
  HierarchyVector<S> y = zero_vector<S>(ind, level);
  Face s = set;
  std::sort(s.begin(), s.end());
  const FaceIndex& lo = ind.at(level - 1);
  const FaceIndex& hi = ind.at(level);
  for (int i = 0; i < lo.size(); ++i)
    if (is_subface(lo[i], s)) y.low[i] = S(level);
  for (int i = 0; i < hi.size(); ++i)
    if (is_subface(hi[i], s)) y.high[i] = S(1);
  return y;
}

// tau_{l-1}: level l -> level l-1 (l >= 2).
//   z(K) = 1/l * sum_{F > K} y(F),  z(F) = y(F)/(l(l-1)) + 1/(l-1) * sum_{H > F} y(H)
template <class S>
HierarchyVector<S> tau(const IndependenceComplex& ind, const HierarchyVector<S>& y) {
  const int l = y.level;
  if (l < 2) throw InputError("tau needs level >= 2");
  detail::require_levels(ind, l);
  const FaceIndex& lo = ind.at(l - 1);
  const FaceIndex& hi = ind.at(l);
  if (static_cast<int>(y.low.size()) != lo.size() || static_cast<int>(y.high.size()) != hi.size())
    throw InputError("tau: vector does not match Ind_" + std::to_string(l - 1) + " and Ind_" +
                     std::to_string(l));
  HierarchyVector<S> z = zero_vector<S>(ind, l - 1);
  const FaceIndex& lower = ind.at(l - 2);
  for (int i = 0; i < lo.size(); ++i)
    for (const Face& kf : facets(lo[i])) {
      const int ki = lower.at(kf);
      z.low[ki] = z.low[ki] + scaled(y.low[i], 1, l);
    }
  for (int i = 0; i < lo.size(); ++i) z.high[i] = scaled(y.low[i], 1, static_cast<long long>(l) * (l - 1));
  for (int h = 0; h < hi.size(); ++h)
    for (const Face& f : facets(hi[h])) {
      const int fi = lo.at(f);
      z.high[fi] = z.high[fi] + scaled(y.high[h], 1, l - 1);
    }
  return z;
}

// Matrix over Ind_{level-1} encoded by y.
template <class S>
DenseMatrix<S> realize(const IndependenceComplex& ind, const HierarchyVector<S>& y) {
  const FaceIndex& lo = ind.at(y.level - 1);
  const FaceIndex& hi = ind.at(y.level);
  DenseMatrix<S> m(lo.size(), std::vector<S>(lo.size(), S(0)));
  for (int a = 0; a < lo.size(); ++a) {
    m[a][a] = y.low[a];
    for (int b = a + 1; b < lo.size(); ++b) {
      const Face u = face_union(lo[a], lo[b]);
      if (static_cast<int>(u.size()) != y.level + 1) continue;
      if (auto h = hi.find(u)) {
        const S v = y.high[*h] * S(epsilon(lo[a], lo[b]));
        m[a][b] = v;
        m[b][a] = v;
      }
    }
  }
  return m;
}

// Inverse of realize() on structured matrices: reads the diagonal and one
// representative entry per admissible union.
template <class S>
HierarchyVector<S> compress(const IndependenceComplex& ind, int level, const DenseMatrix<S>& m) {
  HierarchyVector<S> y = zero_vector<S>(ind, level);
  const FaceIndex& lo = ind.at(level - 1);
  const FaceIndex& hi = ind.at(level);
  for (int a = 0; a < lo.size(); ++a) y.low[a] = m[a][a];
  for (int h = 0; h < hi.size(); ++h) {
    const std::vector<Face> fs = facets(hi[h]);
    const int a = lo.at(fs[0]), b = lo.at(fs[1]);
    y.high[h] = m[a][b] * S(epsilon(fs[0], fs[1]));
  }
  return y;
}

template <class S>
S trace_of(const HierarchyVector<S>& y) {
  S t(0);
  for (const S& v : y.low) t = t + v;
  return t;
}

// <L_down_{l-1}(Ind), Y> = l sum low + l(l+1) sum high
template <class S>
S objective_of(const HierarchyVector<S>& y) {
  S lo(0), hi(0);
  for (const S& v : y.low) lo = lo + v;
  for (const S& v : y.high) hi = hi + v;
  const long long l = y.level;
  return lo * S(l) + hi * S(l * (l + 1));
}

// <M, Y> for an integer matrix M.
template <class S>
S inner(const IntMatrix& m, const DenseMatrix<S>& y) {
  S acc(0);
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      if (m(a, b) != 0) acc = acc + y[a][b] * S(m(a, b));
  return acc;
}

// theta-hat: the level-l program plus PSD blocks for every composite
// tau_i o ... o tau_{l-1}(Y), i = 1..l-1, tied to Y by linear equalities.
// Block 0 is Y; block j is the level-(l-j) image.
struct ThetaHatProblem {
  ThetaInstance base;
  IndependenceComplex ind;
  sdp::SdpProblem problem;
};
ThetaHatProblem build_theta_hat_ell(const Complex& x, int level);
ThetaResult theta_hat_ell(const Complex& x, int level, const sdp::SolveParams& params = {});

}  // namespace simptheta
