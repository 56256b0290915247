#include "simptheta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <string>

#include "simptheta/errors.hpp"
#include "simptheta/linalg.hpp"

namespace simptheta {

namespace detail {

void require_levels(const IndependenceComplex& ind, int level) {
  if (level < 0 || level > ind.top())
    throw InputError("hierarchy level " + std::to_string(level) + " needs Ind up to " +
                     std::to_string(level) + " (have " + std::to_string(ind.top()) + ")");
}

}  // namespace detail

namespace {

// Sparse linear combination of level-l coordinates, used to push the tau maps
// through symbolically when building theta-hat.
struct LinearForm {
  std::map<int, double> coef;
  LinearForm() = default;
  explicit LinearForm(int zero) {
    if (zero != 0) throw std::logic_error("LinearForm only converts from 0");
  }
};

LinearForm operator+(LinearForm a, const LinearForm& b) {
  for (const auto& [i, v] : b.coef) a.coef[i] += v;
  return a;
}

LinearForm scaled(const LinearForm& v, long long num, long long den) {
  LinearForm out = v;
  for (auto& [i, c] : out.coef) c = c * static_cast<double>(num) / static_cast<double>(den);
  return out;
}

ThetaInstance build_level(const Complex& x, int level, const IndependenceComplex& ind) {
  ThetaInstance inst;
  inst.n = x.n();
  inst.k = x.k();
  inst.level = level;
  inst.rows = ind.at(level - 1);
  inst.unions = ind.at(level);
  const FaceIndex& rows = inst.rows;
  std::map<Face, int> class_of;
  for (int a = 0; a < rows.size(); ++a)
    for (int b = a + 1; b < rows.size(); ++b) {
      Face u = face_union(rows[a], rows[b]);
      if (static_cast<int>(u.size()) == level + 1 && inst.unions.contains(u)) {
        auto [it, fresh] = class_of.try_emplace(u, static_cast<int>(inst.symmetry_classes.size()));
        if (fresh) inst.symmetry_classes.push_back({std::move(u), {}});
        inst.symmetry_classes[it->second].pairs.emplace_back(a, b);
      } else {
        inst.zero_pairs.emplace_back(a, b);
      }
    }
  inst.objective = SymMatrix(rows, down_laplacian_formula(rows));
  return inst;
}

IndependenceComplex checked_ind(const Complex& x, int level) {
  if (level < x.k())
    throw InputError("level " + std::to_string(level) + " is below the complex dimension " +
                     std::to_string(x.k()));
  if (level > x.n())
    throw InputError("level exceeds alpha: " + std::to_string(level) + " > n = " +
                     std::to_string(x.n()));
  IndependenceComplex ind = independence_complex(x, level);
  if (ind.at(level - 1).empty())
    throw InputError("level exceeds alpha: Ind_" + std::to_string(level - 1) + " is empty");
  return ind;
}

double certificate_bracket(const ThetaInstance& inst) {
  double best = linalg::lambda_max(inst.objective.values());  // T = 0
  return best;
}

ThetaResult run(const ThetaInstance& inst, const sdp::SdpProblem& problem, bool hat,
                const sdp::SolveParams& params) {
  ThetaResult r;
  r.level = inst.level;
  r.hat = hat;
  r.report = sdp::solve(problem, params);
  r.value = r.report.value;
  r.upper_bracket = certificate_bracket(inst);
  return r;
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  if (g.k() != 1) throw InputError("expected a graph (k = 1), got k = " + std::to_string(g.k()));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (const Face& e : g.top_faces()) a(e[0], e[1]) = a(e[1], e[0]) = 1.0;
  return a;
}

}  // namespace

std::vector<sdp::Constraint> ThetaInstance::constraints() const {
  std::vector<sdp::Constraint> out;
  sdp::Constraint trace;
  for (int a = 0; a < rows.size(); ++a) trace.terms.push_back({0, a, a, 1.0});
  trace.rhs = 1.0;
  out.push_back(std::move(trace));
  for (const auto& [a, b] : zero_pairs) out.push_back({{{0, a, b, 0.5}}, 0.0});
  for (const SymmetryClass& c : symmetry_classes) {
    const auto [a0, b0] = c.pairs.front();
    const double e0 = epsilon(rows[a0], rows[b0]);
    for (std::size_t p = 1; p < c.pairs.size(); ++p) {
      const auto [a, b] = c.pairs[p];
      out.push_back({{{0, a0, b0, 0.5 * e0}, {0, a, b, -0.5 * epsilon(rows[a], rows[b])}}, 0.0});
    }
  }
  return out;
}

sdp::SdpProblem ThetaInstance::to_problem() const {
  sdp::SdpProblem p;
  p.block_sizes = {rows.size()};
  p.objective = {objective.values()};
  p.constraints = constraints();
  return p;
}

std::vector<sdp::DualCondition> ThetaInstance::dual_conditions() const {
  std::vector<sdp::DualCondition> out;
  for (int a = 0; a < rows.size(); ++a)
    out.push_back({"zero diagonal at " + face_label(rows[a]), {{a, a, 1.0}}});
  for (const SymmetryClass& c : symmetry_classes) {
    sdp::DualCondition cond{"sum over unions equal to " + face_label(c.union_set), {}};
    for (const auto& [a, b] : c.pairs) {
      const double e = epsilon(rows[a], rows[b]);
      cond.terms.emplace_back(a, b, e);
      cond.terms.emplace_back(b, a, e);
    }
    out.push_back(std::move(cond));
  }
  return out;
}

ThetaInstance build_theta_k(const Complex& x) {
  if (x.n() < x.k()) throw InputError("theta_k needs n >= k");
  return build_level(x, x.k(), independence_complex(x, x.k()));
}

ThetaInstance build_theta_ell(const Complex& x, int level) {
  return build_level(x, level, checked_ind(x, level));
}

ThetaResult theta_k(const Complex& x, const sdp::SolveParams& params) {
  const ThetaInstance inst = build_theta_k(x);
  ThetaResult r = run(inst, inst.to_problem(), false, params);
  if (x.has_complete_skeleton() && !x.is_empty()) {
    const double g = theta_dual_bound(x, golubev_certificate(x)).value;
    r.upper_bracket = std::min(r.upper_bracket, g);
  }
  return r;
}

ThetaResult theta_ell(const Complex& x, int level, const sdp::SolveParams& params) {
  const ThetaInstance inst = build_theta_ell(x, level);
  return run(inst, inst.to_problem(), false, params);
}

sdp::SolveReport lovasz_theta_report(const Graph& g, const sdp::SolveParams& params) {
  if (g.k() != 1) throw InputError("lovasz_theta expects a graph");
  if (g.n() == 0) throw InputError("lovasz_theta of a graph without vertices");
  sdp::SdpProblem p;
  p.block_sizes = {g.n()};
  p.objective = {Eigen::MatrixXd::Ones(g.n(), g.n())};
  sdp::Constraint trace;
  for (int v = 0; v < g.n(); ++v) trace.terms.push_back({0, v, v, 1.0});
  trace.rhs = 1.0;
  p.constraints.push_back(std::move(trace));
  for (const Face& e : g.top_faces()) p.constraints.push_back({{{0, e[0], e[1], 1.0}}, 0.0});
  return sdp::solve(p, params);
}

double lovasz_theta(const Graph& g, const sdp::SolveParams& params) {
  return lovasz_theta_report(g, params).value;
}

double ratio_bound(const Graph& g) {
  const Eigen::MatrixXd a = adjacency_matrix(g);
  const Eigen::VectorXd deg = a.rowwise().sum();
  if (g.n() == 0) throw InputError("ratio bound of a graph without vertices");
  if ((deg.array() != deg(0)).any()) throw InputError("ratio bound needs a regular graph");
  const double d = deg(0);
  if (d == 0.0) return g.n();
  const double lmin = linalg::lambda_min(a);
  return -g.n() * lmin / (d - lmin);
}

GolubevBound golubev_bound(const Complex& x) {
  GolubevBound out;
  const int n = x.n(), k = x.k();
  out.value = n;
  if (x.is_empty()) return out;
  for (int i = 0; i < k; ++i) {
    int dmin = -1;
    for (const Face& f : x.faces(i)) {
      const int d = x.degree(f);
      dmin = dmin < 0 ? d : std::min(dmin, d);
    }
    out.min_degrees.push_back(std::max(dmin, 0));
    out.max_up_eigs.push_back(linalg::lambda_max(up_laplacian_exact(x, i).cast<double>()));
  }
  out.complete_skeleton_form = x.has_complete_skeleton();
  const int dk = out.min_degrees.back();
  const double mk = out.max_up_eigs.back();
  if (dk == 0 || mk <= 0.0) return out;
  if (out.complete_skeleton_form) {
    out.value = n * (1.0 - dk / mk);
    return out;
  }
  double ratio = dk / mk;
  for (int i = 0; i + 1 < k; ++i) ratio *= (out.min_degrees[i] + i + 1) / out.max_up_eigs[i];
  out.value = n * (1.0 - ratio);
  return out;
}

Link full_link(const Complex& x, const Face& base) {
  if (static_cast<int>(base.size()) != x.k() - 1)
    throw InputError("link base " + face_label(base) + " must have k-1 vertices");
  std::vector<int> vertices;
  std::vector<int> pos(x.n(), -1);
  for (int v = 0; v < x.n(); ++v)
    if (!std::binary_search(base.begin(), base.end(), v)) {
      pos[v] = static_cast<int>(vertices.size());
      vertices.push_back(v);
    }
  std::vector<std::pair<int, int>> edges;
  for (const Face& h : x.top_faces())
    if (is_subface(base, h)) {
      Face rest;
      std::set_difference(h.begin(), h.end(), base.begin(), base.end(), std::back_inserter(rest));
      edges.emplace_back(pos[rest[0]], pos[rest[1]]);
    }
  const int m = static_cast<int>(vertices.size());
  return {std::move(vertices), Complex::graph(m, edges)};
}

double link_bound(const Complex& x, const sdp::SolveParams& params, bool assume_complete_skeleton) {
  const int k = x.k();
  if (!assume_complete_skeleton && !x.is_empty() && !x.has_complete_skeleton())
    throw InputError("link bound needs a complete (k-1)-skeleton");
  if (x.is_empty()) return static_cast<double>(k) * (x.n() - k + 1);
  double best = 0.0;
  for (const Face& base : all_subsets(x.n(), k - 1)) {
    const Link lk = full_link(x, base);
    if (lk.graph.n() == 0) continue;
    best = std::max(best, lk.graph.top_faces().empty() ? static_cast<double>(lk.graph.n())
                                                        : lovasz_theta(lk.graph, params));
  }
  return k * best;
}

double juhasz_certificate(const Graph& g, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InputError("juhasz certificate needs 0 < p <= 1");
  const Eigen::MatrixXd a = adjacency_matrix(g);
  return linalg::lambda_max(Eigen::MatrixXd::Ones(g.n(), g.n()) - a / p);
}

sdp::DualBound theta_dual_bound(const Complex& x, const Eigen::MatrixXd& t, double tol) {
  const ThetaInstance inst = build_theta_k(x);
  if (t.rows() != inst.rows.size() || t.cols() != inst.rows.size())
    throw DimensionMismatch("certificate is " + std::to_string(t.rows()) + "x" +
                            std::to_string(t.cols()) + ", expected " +
                            std::to_string(inst.rows.size()) + " square (all k-subsets)");
  return sdp::dual_eigenvalue_bound(inst.objective.values(), t, inst.dual_conditions(), tol);
}

Eigen::MatrixXd golubev_certificate(const Complex& x) {
  const FaceIndex all = FaceIndex::all(x.n(), x.k());
  if (x.is_empty()) return Eigen::MatrixXd::Zero(all.size(), all.size());
  const SymMatrix up = up_laplacian(x, x.k() - 1);
  const double mu = linalg::lambda_max(up.values());
  if (mu <= 0.0) return Eigen::MatrixXd::Zero(all.size(), all.size());
  const SymMatrix t(x.faces(x.k() - 1),
                    Eigen::MatrixXd((x.n() / mu) * (up.values() - degrees(x).values())));
  return zero_pad(t, all);
}

Eigen::MatrixXd tripartite_certificate(int m) {
  if (m < 1) throw InputError("tripartite certificate needs m >= 1");
  const Complex x = complete_tripartite(m);
  const SymMatrix up = up_laplacian(x, 1);
  const SymMatrix down = down_laplacian(x, 1);
  const double w = 0.25;  // eigenvalues are integers, far apart
  const Eigen::MatrixXd p = linalg::eigenspace_projector(up.values(), 3.0 * m, w) +
                            linalg::eigenspace_projector(up.values(), 2.0 * m, w) +
                            linalg::eigenspace_projector(down.values(), 3.0 * m, w);
  Eigen::MatrixXd t = 2.0 * m * p - down.values();
  t = 0.5 * (t + t.transpose());
  return zero_pad(SymMatrix(x.faces(1), t, Tolerances{1e-9}), FaceIndex::all(3 * m, 2));
}

double spectral_lower_bound(const Complex& x, int level) {
  const IndependenceComplex ind = level == x.k() ? independence_complex(x, level)
                                                 : checked_ind(x, level);
  const FaceIndex& rows = ind.at(level - 1);
  const FaceIndex& unions = ind.at(level);
  if (unions.empty() || rows.empty()) return level;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows.size(), rows.size());
  for (int i = 0; i < rows.size(); ++i)
    for (int j = i + 1; j < rows.size(); ++j) {
      const Face u = face_union(rows[i], rows[j]);
      if (static_cast<int>(u.size()) == level + 1 && unions.contains(u))
        a(i, j) = a(j, i) = epsilon(rows[i], rows[j]);
    }
  const double lmin = linalg::lambda_min(a);
  if (lmin >= -1e-12) return level;
  return level * (1.0 + (level + 1.0) * unions.size() / (-lmin * rows.size()));
}

ThetaHatProblem build_theta_hat_ell(const Complex& x, int level) {
  ThetaHatProblem out{build_theta_ell(x, level), checked_ind(x, level), {}};
  const ThetaInstance& base = out.base;
  const IndependenceComplex& ind = out.ind;
  out.problem = base.to_problem();

  // Coordinates of y: low faces first, then high faces. Each maps to one
  // entry of block 0.
  const int n_low = ind.at(level - 1).size();
  HierarchyVector<LinearForm> y = zero_vector<LinearForm>(ind, level);
  for (int i = 0; i < n_low; ++i) y.low[i].coef[i] = 1.0;
  for (int h = 0; h < ind.at(level).size(); ++h) y.high[h].coef[n_low + h] = 1.0;

  // Block-0 term for coordinate c with weight w, in the "off-diagonal counts
  // twice" convention of sdp::Term.
  auto y_term = [&](int c, double w) -> sdp::Term {
    if (c < n_low) return {0, c, c, w};
    const Face& h = ind.at(level)[c - n_low];
    const std::vector<Face> fs = facets(h);
    const int a = base.rows.at(fs[0]), b = base.rows.at(fs[1]);
    return {0, a, b, 0.5 * w * epsilon(fs[0], fs[1])};
  };

  HierarchyVector<LinearForm> cur = y;
  for (int j = 1; j < level; ++j) {
    cur = tau(ind, cur);
    const int lvl = cur.level;
    const FaceIndex& lo = ind.at(lvl - 1);
    const FaceIndex& hi = ind.at(lvl);
    const int block = static_cast<int>(out.problem.block_sizes.size());
    out.problem.block_sizes.push_back(lo.size());
    out.problem.objective.push_back(Eigen::MatrixXd::Zero(lo.size(), lo.size()));
    for (int a = 0; a < lo.size(); ++a) {
      sdp::Constraint c{{{block, a, a, 1.0}}, 0.0};
      for (const auto& [coord, w] : cur.low[a].coef) c.terms.push_back(y_term(coord, -w));
      out.problem.constraints.push_back(std::move(c));
      for (int b = a + 1; b < lo.size(); ++b) {
        sdp::Constraint e{{{block, a, b, 0.5}}, 0.0};
        const Face u = face_union(lo[a], lo[b]);
        if (static_cast<int>(u.size()) == lvl + 1) {
          if (auto h = hi.find(u)) {
            const double eps = epsilon(lo[a], lo[b]);
            for (const auto& [coord, w] : cur.high[*h].coef) e.terms.push_back(y_term(coord, -eps * w));
          }
        }
        out.problem.constraints.push_back(std::move(e));
      }
    }
  }
  return out;
}

ThetaResult theta_hat_ell(const Complex& x, int level, const sdp::SolveParams& params) {
  const ThetaHatProblem hp = build_theta_hat_ell(x, level);
  return run(hp.base, hp.problem, true, params);
}

}  // namespace simptheta
