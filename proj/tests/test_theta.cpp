#include <doctest.h>

#include <boost/rational.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "simptheta/combinatorics.hpp"
#include "simptheta/linalg.hpp"
#include "simptheta/random_lab.hpp"
#include "simptheta/theta.hpp"

using namespace simptheta;
using Q = boost::rational<long long>;

namespace {

const sdp::SolveParams kTight{.tol = 1e-9};

bool independent_set_of(const Complex& x, const std::vector<int>& s) { return is_independent(x, s); }

// All independent sets of size >= min_size (n small).
std::vector<std::vector<int>> independent_sets(const Complex& x, int min_size) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = 0; m < (1u << x.n()); ++m) {
    if (__builtin_popcount(m) < min_size) continue;
    std::vector<int> s;
    for (int v = 0; v < x.n(); ++v)
      if ((m >> v) & 1u) s.push_back(v);
    if (independent_set_of(x, s)) out.push_back(s);
  }
  return out;
}

template <class S>
bool same(const HierarchyVector<S>& a, const HierarchyVector<S>& b) {
  return a.level == b.level && a.low == b.low && a.high == b.high;
}

}  // namespace

TEST_CASE("Lovasz theta of small graphs") {
  CHECK(lovasz_theta(cycle_graph(5), kTight) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
  CHECK(lovasz_theta(petersen_graph(), kTight) == doctest::Approx(4.0).epsilon(1e-6));
  for (int n : {4, 6}) {
    CHECK(lovasz_theta(Complex::complete(n, 1)) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(lovasz_theta(Complex::empty(n, 1)) == doctest::Approx(double(n)).epsilon(1e-5));
  }
  // the graph route and the k = 1 complex route agree
  for (const Graph& g : {cycle_graph(5), cycle_graph(7), petersen_graph()})
    CHECK(std::abs(lovasz_theta(g, kTight) - theta_k(g, kTight).value) <= 1e-5);
}

TEST_CASE("theta_k closed forms") {
  for (int m : {2, 3}) {
    CHECK(theta_k(complete_tripartite(m)).value == doctest::Approx(2.0 * m).epsilon(1e-4));
    CHECK(theta_k(complement(complete_tripartite(m))).value == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(theta_k(complete_bipartite(m)).value == doctest::Approx(double(m)).epsilon(1e-4));
    CHECK(theta_k(complement(complete_bipartite(m))).value ==
          doctest::Approx((8.0 * m - 4) / (m + 1)).epsilon(1e-4));
  }
  for (auto [n, k] : {std::pair{5, 2}, {6, 2}, {6, 3}}) {
    CHECK(theta_k(Complex::complete(n, k)).value == doctest::Approx(double(k)).epsilon(1e-5));
    CHECK(theta_k(Complex::empty(n, k)).value == doctest::Approx(double(n)).epsilon(1e-5));
  }
}

TEST_CASE("theta_k sandwich and bracket") {
  std::mt19937 rng(17);
  for (int t = 0; t < 6; ++t) {
    const Complex x = oracle::random_complex(rng, 7, 2, 0.3 + 0.1 * t);
    const ThetaResult r = theta_k(x);
    CHECK(r.report.status == sdp::SolveStatus::converged);
    CHECK(r.value >= alpha(x).size - 1e-4);
    CHECK(r.value >= x.k() - 1e-4);
    CHECK(r.value <= x.n() + 1e-4);
    CHECK(r.value <= r.upper_bracket + 1e-5);
  }
}

TEST_CASE("ratio bound") {
  CHECK(ratio_bound(petersen_graph()) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(ratio_bound(cycle_graph(5)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  const double lmin = 2 * std::cos(4 * std::numbers::pi / 5);
  CHECK(ratio_bound(cycle_graph(5)) == doctest::Approx(-5 * lmin / (2 - lmin)).epsilon(1e-12));
  for (int n : {3, 6}) CHECK(ratio_bound(Complex::complete(n, 1)) == doctest::Approx(1.0));
  CHECK(ratio_bound(Complex::empty(4, 1)) == 4.0);
  CHECK_THROWS_AS(ratio_bound(Complex::graph(3, {{0, 1}})), InputError);
}

TEST_CASE("Golubev bound") {
  for (int m : {2, 3}) {
    const GolubevBound t = golubev_bound(complete_tripartite(m));
    CHECK_FALSE(t.complete_skeleton_form);
    CHECK(t.value == doctest::Approx((7.0 * m - 1) / 3).epsilon(1e-10));
    CHECK(golubev_bound(complete_bipartite(m)).value == doctest::Approx(double(m)).epsilon(1e-10));
    const GolubevBound c = golubev_bound(complement(complete_tripartite(m)));
    CHECK(c.complete_skeleton_form);
    CHECK(c.value == doctest::Approx(m + 2.0).epsilon(1e-10));
  }
  CHECK(golubev_bound(Complex::empty(6, 2)).value == 6.0);
  // theta_k never exceeds the complete-skeleton form
  std::mt19937 rng(4);
  for (const Complex& x : {Complex::complete(6, 2), complete_bipartite(3), complement(complete_tripartite(2)),
                           oracle::random_complex(rng, 7, 2, 0.7)}) {
    if (!x.has_complete_skeleton()) continue;
    CHECK(theta_k(x).value <= golubev_bound(x).value + 1e-4);
  }
}

TEST_CASE("Golubev certificate reproduces the bound") {
  for (const Complex& x : {complete_bipartite(3), complement(complete_tripartite(2)), Complex::complete(6, 2)}) {
    const sdp::DualBound d = theta_dual_bound(x, golubev_certificate(x));
    CHECK(d.value == doctest::Approx(golubev_bound(x).value).epsilon(1e-9));
  }
  // T = 0 gives n
  const Complex x = complete_tripartite(2);
  CHECK(theta_dual_bound(x, Eigen::MatrixXd::Zero(15, 15)).value == doctest::Approx(6.0));
}

TEST_CASE("tripartite certificate") {
  for (int m : {2, 3}) {
    const Eigen::MatrixXd t = tripartite_certificate(m);
    const sdp::DualBound d = theta_dual_bound(complete_tripartite(m), t);
    CHECK(std::abs(d.value - 2 * m) <= 1e-6);
    CHECK(d.worst_violation <= 1e-9);
  }
  Eigen::MatrixXd bad = tripartite_certificate(2);
  bad(0, 0) += 1.0;
  CHECK_THROWS_AS(theta_dual_bound(complete_tripartite(2), bad), InputError);
}

TEST_CASE("link bound") {
  for (auto [n, k] : {std::pair{5, 2}, {6, 3}}) {
    CHECK(link_bound(Complex::complete(n, k)) == doctest::Approx(double(k)).epsilon(1e-5));
    CHECK(link_bound(Complex::empty(n, k)) == doctest::Approx(double(k * (n - k + 1))).epsilon(1e-5));
  }
  CHECK_THROWS_AS(link_bound(complete_tripartite(2)), InputError);
  for (std::uint64_t seed : {1, 2, 3}) {
    const Complex x = sample_lm(8, 2, 0.5, seed);
    CHECK(theta_k(x).value <= link_bound(x, {}, true) + 1e-4);
  }
  // full_link agrees with link on complete skeletons
  const Complex x = complete_bipartite(3);
  for (const Face& base : x.faces(0)) CHECK(full_link(x, base).graph == link(x, base).graph);
}

TEST_CASE("Juhasz certificate") {
  CHECK(juhasz_certificate(Complex::empty(7, 1), 0.5) == doctest::Approx(7.0));
  CHECK(juhasz_certificate(Complex::complete(6, 1), 1.0) == doctest::Approx(1.0));
  for (std::uint64_t seed : {1, 2}) {
    const Graph g = sample_gnp(30, 0.5, seed);
    const double bound = juhasz_certificate(g, 0.5);
    CHECK(std::isfinite(bound));
    CHECK(lovasz_theta(g) <= bound + 1e-4);
  }
  CHECK_THROWS_AS(juhasz_certificate(cycle_graph(5), 0.0), InputError);
}

TEST_CASE("instance invariants") {
  std::mt19937 rng(8);
  std::vector<std::pair<Complex, int>> cases = {{complete_tripartite(2), 2},
                                                {complete_tripartite(2), 3},
                                                {complement(complete_tripartite(2)), 3},
                                                {cycle_graph(7), 2},
                                                {oracle::random_complex(rng, 7, 2, 0.4), 3}};
  for (const auto& [x, level] : cases) {
    const ThetaInstance inst = build_theta_ell(x, level);
    CHECK(inst.objective.values() == down_laplacian_formula(inst.rows).cast<double>());
    std::set<std::pair<int, int>> zeros(inst.zero_pairs.begin(), inst.zero_pairs.end());
    std::set<std::pair<int, int>> in_class;
    for (const SymmetryClass& c : inst.symmetry_classes) {
      CHECK(inst.unions.contains(c.union_set));
      CHECK(c.pairs.front() == *std::min_element(c.pairs.begin(), c.pairs.end()));
      for (auto p : c.pairs) {
        CHECK(face_union(inst.rows[p.first], inst.rows[p.second]) == c.union_set);
        in_class.insert(p);
      }
      // every pair with this union is present
      int expected = 0;
      for (int a = 0; a < inst.rows.size(); ++a)
        for (int b = a + 1; b < inst.rows.size(); ++b)
          expected += face_union(inst.rows[a], inst.rows[b]) == c.union_set;
      CHECK(static_cast<int>(c.pairs.size()) == expected);
    }
    for (auto p : in_class) CHECK(zeros.count(p) == 0);
    // every off-diagonal pair is either zeroed or in a class
    CHECK(zeros.size() + in_class.size() ==
          static_cast<std::size_t>(inst.rows.size() * (inst.rows.size() - 1) / 2));
  }
  // level k coincides with the base program
  const Complex x = complement(complete_tripartite(2));
  const ThetaInstance a = build_theta_k(x), b = build_theta_ell(x, 2);
  CHECK(a.rows.faces() == b.rows.faces());
  CHECK(a.zero_pairs == b.zero_pairs);
  CHECK(a.symmetry_classes.size() == b.symmetry_classes.size());
  CHECK(a.constraints().size() == b.constraints().size());

  CHECK_THROWS_AS(build_theta_ell(x, 1), InputError);
  CHECK_THROWS_WITH_AS(build_theta_ell(complete_tripartite(2), 99), doctest::Contains("level exceeds alpha"),
                       InputError);
}

TEST_CASE("witness matrices Y^S are feasible with objective |S|") {
  for (const auto& [x, level] : std::vector<std::pair<Complex, int>>{
           {cycle_graph(7), 2}, {complement(complete_tripartite(2)), 2}, {complete_tripartite(2), 3},
           {Complex::empty(5, 2), 3}}) {
    const ThetaInstance inst = build_theta_ell(x, level);
    const IndependenceComplex ind = independence_complex(x, level);
    const IntMatrix lap = down_laplacian_formula(inst.rows);
    for (const auto& s : independent_sets(x, level)) {
      const long long c = binomial(static_cast<int>(s.size()), level);
      const HierarchyVector<Q> y = indicator_vector<Q>(ind, level, s);
      const DenseMatrix<Q> ys = realize(ind, y);
      Q tr(0);
      for (std::size_t i = 0; i < ys.size(); ++i) tr += ys[i][i];
      CHECK(tr == Q(level * c));
      CHECK(trace_of(y) == tr);
      CHECK(inner(lap, ys) == Q(level * c * static_cast<long long>(s.size())));
      CHECK(objective_of(y) == inner(lap, ys));
      CHECK(same(compress(ind, level, ys), y));

      // scaled to unit trace it satisfies every constraint and is PSD
      Eigen::MatrixXd yd(ys.size(), ys.size());
      for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) yd(i, j) = boost::rational_cast<double>(ys[i][j]) / (level * c);
      for (const sdp::Constraint& con : inst.constraints())
        CHECK(std::abs(sdp::evaluate(con, {yd}) - con.rhs) < 1e-12);
      CHECK(linalg::lambda_min(yd) >= -1e-12);
      CHECK((lap.cast<double>().cwiseProduct(yd)).sum() == doctest::Approx(double(s.size())));
    }
  }
}

TEST_CASE("tau on indicator vectors") {
  for (const Complex& x : {cycle_graph(7), complement(complete_tripartite(2)), Complex::empty(6, 2)}) {
    const int top = alpha(x).size;
    const IndependenceComplex ind = independence_complex(x, top);
    for (int level = std::max(2, x.k()); level <= top; ++level)
      for (const auto& s : independent_sets(x, level)) {
        const HierarchyVector<Q> z = tau(ind, indicator_vector<Q>(ind, level, s));
        const Q factor(static_cast<long long>(s.size()) - level + 1, level - 1);
        HierarchyVector<Q> expected = indicator_vector<Q>(ind, level - 1, s);
        for (Q& v : expected.low) v *= factor;
        for (Q& v : expected.high) v *= factor;
        CHECK(same(z, expected));
      }
  }
}

TEST_CASE("tau on basis vectors and zero") {
  const Complex x = Complex::empty(5, 2);
  const IndependenceComplex ind = independence_complex(x, 3);
  for (int level : {2, 3}) {
    CHECK(same(tau(ind, zero_vector<Q>(ind, level)), zero_vector<Q>(ind, level - 1)));
    for (int h = 0; h < ind.at(level).size(); ++h) {
      HierarchyVector<Q> y = zero_vector<Q>(ind, level);
      y.high[h] = Q(1);
      const HierarchyVector<Q> z = tau(ind, y);
      for (const Q& v : z.low) CHECK(v == Q(0));
      for (int f = 0; f < ind.at(level - 1).size(); ++f)
        CHECK(z.high[f] == (is_subface(ind.at(level - 1)[f], ind.at(level)[h]) ? Q(1, level - 1) : Q(0)));
    }
  }
  HierarchyVector<Q> bad = zero_vector<Q>(ind, 3);
  bad.low.pop_back();
  CHECK_THROWS_AS(tau(ind, bad), InputError);
  CHECK_THROWS_AS(tau(ind, zero_vector<Q>(ind, 1)), InputError);
}

TEST_CASE("tau conserves trace and objective") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  for (const Complex& x : {Complex::empty(6, 2), cycle_graph(7), complement(complete_tripartite(2))}) {
    const int top = alpha(x).size;
    const IndependenceComplex ind = independence_complex(x, top);
    for (int level = std::max(2, x.k()); level <= top; ++level) {
      HierarchyVector<Q> y = zero_vector<Q>(ind, level);
      for (Q& v : y.low) v = Q(num(rng), den(rng));
      for (Q& v : y.high) v = Q(num(rng), den(rng));
      const HierarchyVector<Q> z = tau(ind, y);
      CHECK(trace_of(z) == trace_of(y));
      CHECK(objective_of(z) == objective_of(y));
      // same identities through the explicit matrices
      const IntMatrix ly = down_laplacian_formula(ind.at(level - 1));
      const IntMatrix lz = down_laplacian_formula(ind.at(level - 2));
      CHECK(inner(ly, realize(ind, y)) == objective_of(y));
      CHECK(inner(lz, realize(ind, z)) == objective_of(z));
    }
  }
}

TEST_CASE("hierarchy values") {
  // at l = alpha only diagonal matrices are feasible
  CHECK(theta_ell(cycle_graph(5), 2).value == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(theta_ell(cycle_graph(7), 3).value == doctest::Approx(3.0).epsilon(1e-4));
  CHECK(theta_ell(complete_bipartite(2), 2).value == doctest::Approx(2.0).epsilon(1e-4));
  const Complex ct = complement(complete_tripartite(2));
  CHECK(theta_ell(ct, 3).value == doctest::Approx(3.0).epsilon(1e-4));

  for (const Complex& x : {cycle_graph(5), cycle_graph(7), ct}) {
    const int a = alpha(x).size;
    double prev = 1e9;
    for (int level = x.k(); level <= a; ++level) {
      const double plain = theta_ell(x, level).value;
      const double hat = theta_hat_ell(x, level).value;
      CHECK(hat <= plain + 1e-4);
      CHECK(hat <= prev + 1e-4);
      CHECK(hat >= a - 1e-4);
      prev = hat;
    }
    CHECK(prev == doctest::Approx(double(a)).epsilon(1e-3));
  }
  const double h2 = theta_hat_ell(cycle_graph(5), 2).value;
  CHECK(h2 >= 2 - 1e-4);
  CHECK(h2 <= std::sqrt(5.0) + 1e-4);
}

TEST_CASE("theta-hat problem layout") {
  const ThetaHatProblem p = build_theta_hat_ell(cycle_graph(7), 3);
  REQUIRE(p.problem.block_sizes.size() == 3);
  CHECK(p.problem.block_sizes[0] == p.ind.at(2).size());
  CHECK(p.problem.block_sizes[1] == p.ind.at(1).size());
  CHECK(p.problem.block_sizes[2] == p.ind.at(0).size());
  CHECK_NOTHROW(p.problem.validate());
}

TEST_CASE("spectral lower bound") {
  CHECK(spectral_lower_bound(Complex::complete(5, 2), 2) == doctest::Approx(2.0));
  for (const Complex& x : {complete_tripartite(2), complement(complete_bipartite(3)), Complex::empty(6, 2)})
    CHECK(spectral_lower_bound(x, 2) <= theta_k(x).value + 1e-4);
  for (std::uint64_t seed : {5, 6}) {
    const Complex x = sample_lm(9, 2, 0.5, seed);
    CHECK(spectral_lower_bound(x, 2) <= theta_k(x).value + 1e-4);
  }
  CHECK(spectral_lower_bound(cycle_graph(7), 2) <= theta_ell(cycle_graph(7), 2).value + 1e-4);
}
