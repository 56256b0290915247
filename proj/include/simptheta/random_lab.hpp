#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "simptheta/complex.hpp"
#include "simptheta/sdp.hpp"

namespace simptheta {

// Uniform [0, 1) draw for a (seed, counter) pair. Stateless, so every
// subset's coin is fixed independently of the others and of p.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

// Linial-Meshulam X^k(n, p): each (k+1)-subset, by lexicographic rank r, is
// kept iff counter_uniform(seed, r) < p. The (k-1)-skeleton is complete by
// definition; the Complex stores only the k-faces.
Complex sample_lm(int n, int k, double p, std::uint64_t seed);
Graph sample_gnp(int n, double p, std::uint64_t seed);

enum class ExperimentKind { theta_k, theta_ell };
std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& s);

// Grid spec: "n=8,10,12;p=0.5;k=2" (theta_k) or "n=15,20;p=0.5;ell=2".
struct Grid {
  std::vector<int> n;
  std::vector<double> p;
  std::vector<int> k_or_ell;
};
Grid parse_grid(const std::string& spec, ExperimentKind kind);

struct ExperimentRow {
  ExperimentKind kind = ExperimentKind::theta_k;
  int n = 0;
  int k_or_ell = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  double value = 0.0;       // theta_k(X) or theta_l(G)
  double reference = 0.0;   // sqrt((n-k) q / p) or sqrt(n q^l / p); 0 when p = 1
  std::optional<double> ratio;
  std::string status;       // converged | max_iter | not_applicable | level_exceeds_alpha | error: ...
  double lower_bound = 0.0; // spectral feasible-point bound
  double upper_bound = 0.0; // link bound (complexes) or lambda_max(J - A/p) (graphs)
  int alpha = 0;
  bool in_regime = true;    // log(n)/n < p < 1 - log(n)/n
};

std::vector<ExperimentRow> scaling_experiment(ExperimentKind kind, const Grid& grid,
                                              const std::vector<std::uint64_t>& seeds,
                                              const sdp::SolveParams& params = {});

struct CellSummary {
  ExperimentKind kind = ExperimentKind::theta_k;
  int n = 0;
  int k_or_ell = 0;
  double p = 0.0;
  int samples = 0;  // rows with a ratio
  double median_ratio = 0.0;
  double q1_ratio = 0.0;
  double q3_ratio = 0.0;
  double median_value = 0.0;
};

// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> data, double q);

std::vector<CellSummary> summarize(const std::vector<ExperimentRow>& rows);

// max median / min median over cells with samples; 1 when fewer than two.
double median_spread(const std::vector<CellSummary>& cells);

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct LinkSpectraReport {
  double lambda_min_complement = 0.0;  // lambda_min of the complement adjacency over all k-subsets
  double min_link_lambda = 0.0;        // min over K of lambda_min(A(lk_{complement}(K)))
  double rhs = 0.0;                    // k * min_link_lambda
  bool holds = false;                  // lambda_min_complement >= rhs - tol
};

// The localization inequality lambda_min(A-bar) >= k min_K lambda_min(A(lk_{X-bar}(K))),
// with X treated as having a complete (k-1)-skeleton.
LinkSpectraReport link_spectra_check(const Complex& x, double tol = 1e-6);

}  // namespace simptheta
