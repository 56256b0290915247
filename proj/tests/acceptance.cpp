// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <boost/rational.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "simptheta/chain.hpp"
#include "simptheta/combinatorics.hpp"
#include "simptheta/linalg.hpp"
#include "simptheta/random_lab.hpp"
#include "simptheta/theta.hpp"

using namespace simptheta;
using Q = boost::rational<long long>;

namespace {

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(10);
    s << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
};

int failed_criteria = 0;

void run(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = c.failures.empty();
  failed_criteria += !ok;
  std::printf("criterion %2d: %s  %s [%.1fs]%s%s\n", id, ok ? "PASS" : "FAIL", title.c_str(), secs,
              c.detail.empty() ? "" : "  ", c.detail.c_str());
  for (const std::string& f : c.failures) std::printf("    - %s\n", f.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(8);
  s << v;
  return s.str();
}

// theta_k values are reused across criteria.
std::map<std::string, double> theta_cache;

double theta_of(const std::string& name, const Complex& x) {
  auto it = theta_cache.find(name);
  if (it != theta_cache.end()) return it->second;
  const ThetaResult r = theta_k(x);
  if (r.report.status != sdp::SolveStatus::converged)
    throw ComputeError("theta_k(" + name + ") did not converge");
  return theta_cache[name] = r.value;
}

struct Fixture {
  std::string name;
  Complex x;
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  for (int m : {2, 3}) {
    const std::string s = std::to_string(m);
    out.push_back({"K" + s + s + s, complete_tripartite(m)});
    out.push_back({"co-K" + s + s + s, complement(complete_tripartite(m))});
    out.push_back({"K" + s + s, complete_bipartite(m)});
    out.push_back({"co-K" + s + s, complement(complete_bipartite(m))});
  }
  out.push_back({"K5^2", Complex::complete(5, 2)});
  out.push_back({"K6^2", Complex::complete(6, 2)});
  out.push_back({"K6^3", Complex::complete(6, 3)});
  out.push_back({"E5^2", Complex::empty(5, 2)});
  out.push_back({"E6^2", Complex::empty(6, 2)});
  out.push_back({"E6^3", Complex::empty(6, 3)});
  out.push_back({"C5", cycle_graph(5)});
  out.push_back({"C7", cycle_graph(7)});
  out.push_back({"Petersen", petersen_graph()});
  return out;
}

// Golubev value recomputed from its ingredients.
double golubev_general(const GolubevBound& g, int n) {
  const int k = static_cast<int>(g.min_degrees.size());
  double num = 1.0, den = 1.0;
  for (int i = 0; i < k; ++i) {
    num *= g.min_degrees[i] + (i + 1 < k ? i + 1 : 0);
    den *= g.max_up_eigs[i];
  }
  return n * (1.0 - num / den);
}

int count_near(const Eigen::VectorXd& e, double v) {
  int c = 0;
  for (int i = 0; i < e.size(); ++i) c += std::abs(e(i) - v) < 1e-8;
  return c;
}

std::vector<std::vector<int>> independent_sets(const Complex& x, int min_size) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = 0; m < (1u << x.n()); ++m) {
    if (__builtin_popcount(m) < min_size) continue;
    std::vector<int> s;
    for (int v = 0; v < x.n(); ++v)
      if ((m >> v) & 1u) s.push_back(v);
    if (is_independent(x, s)) out.push_back(s);
  }
  return out;
}

}  // namespace

int main() {
  run(1, "closed-form theta values of the tripartite and bipartite families", [](Check& c) {
    for (int m : {2, 3}) {
      const std::string s = std::to_string(m);
      c.near(theta_of("K" + s + s + s, complete_tripartite(m)), 2.0 * m, 1e-3, "theta_2(K_{m,m,m}) m=" + s);
      c.near(theta_of("co-K" + s + s + s, complement(complete_tripartite(m))), 3.0, 1e-3,
             "theta_2(co-K_{m,m,m}) m=" + s);
      c.near(theta_of("K" + s + s, complete_bipartite(m)), m, 1e-3, "theta_2(K_{m,m}) m=" + s);
      c.near(theta_of("co-K" + s + s, complement(complete_bipartite(m))), (8.0 * m - 4) / (m + 1), 1e-3,
             "theta_2(co-K_{m,m}) m=" + s);
    }
    c.detail = "co-K33 = " + fmt(theta_cache["co-K33"]);
  });

  run(2, "trivial anchors: complete gives k, empty gives n", [](Check& c) {
    for (auto [n, k] : {std::pair{5, 2}, {6, 2}, {6, 3}}) {
      const std::string s = std::to_string(n) + "^" + std::to_string(k);
      c.near(theta_of("K" + s, Complex::complete(n, k)), k, 1e-4, "theta(K_" + s + ")");
      c.near(theta_of("E" + s, Complex::empty(n, k)), n, 1e-4, "theta(empty_" + s + ")");
    }
  });

  run(3, "tripartite dual certificate", [](Check& c) {
    for (int m : {2, 3}) {
      const sdp::DualBound d = theta_dual_bound(complete_tripartite(m), tripartite_certificate(m), 1e-9);
      c.near(d.value, 2.0 * m, 1e-6, "lambda_max(L + T) m=" + std::to_string(m));
      c.detail += "m=" + std::to_string(m) + " violation " + fmt(d.worst_violation) + " ";
    }
  });

  run(4, "spectral identities", [](Check& c) {
    for (int n = 2; n <= 7; ++n)
      for (int k = 1; k < n; ++k) {
        const Complex x = Complex::complete(n, k);
        for (int i = 0; i < k; ++i) {
          const std::string tag = "K_" + std::to_string(n) + "^" + std::to_string(k) + " i=" + std::to_string(i);
          const IntMatrix sum = up_laplacian_exact(x, i) + down_laplacian_exact(x, i);
          const int s = x.faces(i).size();
          c.expect(sum == IntMatrix::Identity(s, s) * n, tag + ": L_up + L_down != nI");
          c.expect(count_near(spectrum(up_laplacian(x, i)), n) == binomial(n - 1, i + 1),
                   tag + ": up multiplicity of n");
          c.expect(count_near(spectrum(down_laplacian(x, i)), n) == binomial(n - 1, i),
                   tag + ": down multiplicity of n");
        }
      }
    for (int m = 1; m <= 3; ++m) {
      const Complex x = complete_tripartite(m);
      const Eigen::VectorXd up = spectrum(up_laplacian(x, 1));
      const Eigen::VectorXd dn = spectrum(down_laplacian(x, 1));
      const std::string tag = "K_{m,m,m} m=" + std::to_string(m);
      const int e2 = 3 * (m - 1), e1 = 3 * (m - 1) * (m - 1);
      c.expect(count_near(up, 3 * m) == 1, tag + ": up 3m");
      if (m > 1) {
        c.expect(count_near(up, 2 * m) == e2, tag + ": up 2m");
        c.expect(count_near(up, m) == e1, tag + ": up m");
        c.expect(count_near(dn, 2 * m) == e2, tag + ": down 2m");
      }
      c.expect(count_near(up, 0) == up.size() - 1 - (m > 1 ? e2 + e1 : 0), tag + ": up kernel");
      c.expect(count_near(dn, 3 * m) == 2, tag + ": down 3m");
      c.expect(count_near(dn, 0) == dn.size() - 2 - (m > 1 ? e2 : 0), tag + ": down kernel");
    }
    for (int m = 2; m <= 4; ++m) {
      const Complex x = complete_bipartite(m);
      const IntMatrix up = up_laplacian_exact(x, 1);
      const FaceIndex& edges = x.faces(1);
      std::vector<int> in_part, crossing;
      for (int e = 0; e < edges.size(); ++e)
        ((edges[e][0] < m) == (edges[e][1] < m) ? in_part : crossing).push_back(e);
      const int a = in_part.size(), b = crossing.size();
      IntMatrix mb(a, b), nb(b, b);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) mb(i, j) = -up(in_part[i], crossing[j]);
      for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) nb(i, j) = (i == j ? 2 * m : 0) - up(crossing[i], crossing[j]);
      c.expect(mb.transpose() * mb == nb * m - IntMatrix::Ones(b, b) * 2,
               "K_{m,m} m=" + std::to_string(m) + ": M^T M != mN - 2J");
    }
  });

  run(5, "Golubev comparisons", [](Check& c) {
    for (const Fixture& f : fixtures()) {
      if (!f.x.has_complete_skeleton() || f.x.is_empty()) continue;
      const GolubevBound g = golubev_bound(f.x);
      c.expect(g.complete_skeleton_form, f.name + ": complete-skeleton form not used");
      c.expect(theta_of(f.name, f.x) <= g.value + 1e-4, f.name + ": theta exceeds the complete-skeleton bound");
    }
    for (int m : {2, 3}) {
      const std::string s = std::to_string(m);
      const GolubevBound t = golubev_bound(complete_tripartite(m));
      const double eq2 = golubev_general(t, 3 * m);
      c.near(eq2, (7.0 * m - 1) / 3, 1e-9, "general form on K_{m,m,m} m=" + s);
      c.expect(eq2 > theta_of("K" + s + s + s, complete_tripartite(m)) + 1e-3,
               "general form does not exceed theta on K_{m,m,m} m=" + s);
      const GolubevBound co = golubev_bound(complement(complete_tripartite(m)));
      c.near(golubev_general(co, 3 * m), m + 2.0, 1e-9, "general form on co-K_{m,m,m} m=" + s);
    }
  });

  run(6, "hierarchy: theta-hat monotone, reaches alpha; exact identities", [](Check& c) {
    const std::vector<Fixture> fx = {{"C5", cycle_graph(5)},
                                     {"C7", cycle_graph(7)},
                                     {"K22", complete_bipartite(2)},
                                     {"co-K222", complement(complete_tripartite(2))}};
    for (const Fixture& f : fx) {
      const int a = alpha(f.x).size;
      if (a > 6) throw InputError(f.name + " has alpha above 6");
      double prev = 1e300;
      std::string seq;
      for (int l = f.x.k(); l <= a; ++l) {
        const ThetaResult r = theta_hat_ell(f.x, l);
        c.expect(r.report.status == sdp::SolveStatus::converged, f.name + ": hat level " + std::to_string(l));
        c.expect(r.value <= prev + 1e-4, f.name + ": increase at level " + std::to_string(l));
        prev = r.value;
        seq += (seq.empty() ? "" : ",") + fmt(r.value);
      }
      c.near(prev, a, 1e-3, f.name + ": theta-hat at alpha");
      c.detail += f.name + "[" + seq + "] ";

      const IndependenceComplex ind = independence_complex(f.x, a);
      for (int l = std::max(f.x.k(), 1); l <= a; ++l) {
        const IntMatrix lap = down_laplacian_formula(ind.at(l - 1));
        for (const auto& s : independent_sets(f.x, l)) {
          const long long size = static_cast<long long>(s.size());
          const Q cnt(binomial(static_cast<int>(size), l));
          const HierarchyVector<Q> y = indicator_vector<Q>(ind, l, s);
          const DenseMatrix<Q> ys = realize(ind, y);
          Q tr(0);
          for (std::size_t i = 0; i < ys.size(); ++i) tr += ys[i][i];
          c.expect(tr == Q(l) * cnt, f.name + ": <I, Y^S>");
          c.expect(inner(lap, ys) == Q(l) * cnt * Q(size), f.name + ": <L, Y^S>");
          c.expect(trace_of(y) == tr && objective_of(y) == inner(lap, ys), f.name + ": compressed identities");
          if (l < 2) continue;
          const HierarchyVector<Q> z = tau(ind, y);
          HierarchyVector<Q> want = indicator_vector<Q>(ind, l - 1, s);
          const Q factor(size - l + 1, l - 1);
          for (Q& v : want.low) v *= factor;
          for (Q& v : want.high) v *= factor;
          c.expect(z.low == want.low && z.high == want.high, f.name + ": tau(y^S) at level " + std::to_string(l));
        }
      }
    }
  });

  run(7, "sandwich and chromatic chain", [](Check& c) {
    int chik_done = 0, chik_skipped = 0;
    for (const Fixture& f : fixtures()) {
      const double th = theta_of(f.name, f.x);
      const int a = alpha(f.x).size;
      const int chi = chi_weak(f.x).colors;
      c.expect(a <= th + 1e-4, f.name + ": alpha > theta");
      c.expect(th <= f.x.n() + 1e-4, f.name + ": theta > n");
      c.expect(f.x.n() / th <= chi + 1e-4, f.name + ": n/theta > chi");
      const ChiKResult ck = chi_k(f.x, 2'000'000);
      if (ck.status != ChiKStatus::found) {
        ++chik_skipped;
        continue;
      }
      ++chik_done;
      const double co = theta_of("complement of " + f.name, complement(f.x));
      c.expect(co <= ck.value + 1e-4, f.name + ": theta(complement) = " + fmt(co) + " > chi_k = " +
                                          std::to_string(ck.value));
    }
    const double co33 = theta_of("co-K33", complement(complete_bipartite(3)));
    const int chi33 = chi_weak(complete_bipartite(3)).colors;
    c.near(co33, 5.0, 1e-3, "theta_2(co-K_{3,3})");
    c.expect(chi33 == 2, "chi(K_{3,3}) != 2");
    c.expect(co33 > 2.0 * chi33 + 0.5, "theta_2(co-K_{3,3}) does not exceed 2 chi");
    c.detail = "chi_k terminated on " + std::to_string(chik_done) + " fixtures, budget hit on " +
               std::to_string(chik_skipped) + "; theta_2(co-K33) = " + fmt(co33) + " > 4";
  });

  run(8, "graph specialization", [](Check& c) {
    const sdp::SolveReport r = lovasz_theta_report(cycle_graph(5), {.tol = 1e-9});
    c.near(r.value, std::sqrt(5.0), 1e-4, "theta(C5)");
    c.expect(std::abs(r.value - r.dual_value) <= 1e-5, "C5 primal-dual gap " + fmt(r.value - r.dual_value));
    const double rb = ratio_bound(petersen_graph());
    c.near(rb, 4.0, 1e-12, "ratio bound of Petersen");
    const Eigen::VectorXd e = spectrum(adjacency(petersen_graph()));
    c.expect(count_near(e, 3) == 1 && count_near(e, 1) == 5 && count_near(e, -2) == 4, "Petersen spectrum");
    c.detail = "gap " + fmt(std::abs(r.value - r.dual_value));
  });

  run(9, "random scaling band and per-sample bounds (k=2, p=0.5)", [](Check& c) {
    const Grid grid = parse_grid("n=8,10,12,14;p=0.5;k=2", ExperimentKind::theta_k);
    const auto rows = scaling_experiment(ExperimentKind::theta_k, grid, {1, 2, 3, 4, 5});
    c.expect(rows.size() == 20, "expected 20 rows");
    for (const ExperimentRow& r : rows) {
      const std::string tag = "n=" + std::to_string(r.n) + " seed=" + std::to_string(r.seed);
      c.expect(r.status == "converged", tag + ": status " + r.status);
      c.expect(r.alpha <= r.value + 1e-4, tag + ": alpha > theta");
      c.expect(r.value <= r.upper_bound + 1e-4, tag + ": theta > link bound");
      c.expect(r.lower_bound <= r.value + 1e-4, tag + ": spectral lower bound > theta");
    }
    const auto cells = summarize(rows);
    const double spread = median_spread(cells);
    c.expect(spread <= 3.0, "median ratio spread " + fmt(spread) + " > 3");
    for (const CellSummary& s : cells) c.detail += "n=" + std::to_string(s.n) + ":" + fmt(s.median_ratio) + " ";
    c.detail += "spread " + fmt(spread);
  });

  run(10, "oracle equivalence: alpha and SDP", [](Check& c) {
    std::mt19937 rng(20240601);
    for (int t = 0; t < 50; ++t) {
      const int n = 5 + t % 8;
      const int k = 1 + t % 3;
      const Complex x = oracle::random_complex(rng, n, k, 0.2 + 0.6 * (t % 7) / 6.0);
      const int bb = alpha(x).size, naive = oracle::alpha_naive(x);
      c.expect(bb == naive, "random complex " + std::to_string(t) + ": alpha " + std::to_string(bb) +
                                " vs naive " + std::to_string(naive));
    }
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const oracle::RandomSdp s = oracle::random_sdp(rng, 3 + t % 4, 1 + t % 3);
      const sdp::SolveReport r = sdp::solve(s.problem, {.tol = 1e-9});
      const double sub = oracle::subgradient_dual(s);
      worst = std::max(worst, std::abs(r.value - sub));
      c.near(r.value, sub, 1e-3, "random SDP " + std::to_string(t));
    }
    c.detail = "worst SDP difference " + fmt(worst);
  });

  std::printf("%d of 10 criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
