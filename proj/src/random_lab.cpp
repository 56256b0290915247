#include "simptheta/random_lab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "simptheta/combinatorics.hpp"
#include "simptheta/errors.hpp"
#include "simptheta/linalg.hpp"
#include "simptheta/theta.hpp"

namespace simptheta {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability must lie in [0, 1]");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <class T>
T parse_number(const std::string& s) {
  std::istringstream in(s);
  T v;
  if (!(in >> v) || !(in >> std::ws).eof()) throw InputError("bad number in grid: '" + s + "'");
  return v;
}

Eigen::MatrixXd graph_adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (const Face& e : g.top_faces()) a(e[0], e[1]) = a(e[1], e[0]) = 1.0;
  return a;
}

ExperimentRow make_row(ExperimentKind kind, int n, int l, double p, std::uint64_t seed) {
  ExperimentRow row;
  row.kind = kind;
  row.n = n;
  row.k_or_ell = l;
  row.p = p;
  row.seed = seed;
  return row;
}

bool regime(int n, double p) {
  const double t = std::log(static_cast<double>(n)) / n;
  return p > t && p < 1.0 - t;
}

ExperimentRow run_theta_k(int n, int k, double p, std::uint64_t seed, const sdp::SolveParams& params) {
  ExperimentRow row = make_row(ExperimentKind::theta_k, n, k, p, seed);
  row.in_regime = regime(n, p);
  const Complex x = sample_lm(n, k, p, seed);
  row.alpha = alpha(x).size;
  const double q = 1.0 - p;
  row.reference = p > 0.0 ? std::sqrt((n - k) * q / p) : 0.0;
  const ThetaResult r = theta_k(x, params);
  row.value = r.value;
  row.status = sdp::to_string(r.report.status);
  row.lower_bound = spectral_lower_bound(x, k);
  row.upper_bound = link_bound(x, params, true);
  if (row.reference > 0.0)
    row.ratio = row.value / row.reference;
  else
    row.status = "not_applicable";
  return row;
}

ExperimentRow run_theta_ell(int n, int l, double p, std::uint64_t seed, const sdp::SolveParams& params) {
  ExperimentRow row = make_row(ExperimentKind::theta_ell, n, l, p, seed);
  row.in_regime = regime(n, p);
  const Graph g = sample_gnp(n, p, seed);
  row.alpha = alpha(g).size;
  const double q = 1.0 - p;
  row.reference = p > 0.0 ? std::sqrt(n * std::pow(q, l) / p) : 0.0;
  row.upper_bound = p > 0.0 ? juhasz_certificate(g, p) : n;
  if (l > row.alpha) {
    row.status = "level_exceeds_alpha";
    return row;
  }
  const ThetaResult r = theta_ell(g, l, params);
  row.value = r.value;
  row.status = sdp::to_string(r.report.status);
  row.lower_bound = spectral_lower_bound(g, l);
  if (row.reference > 0.0)
    row.ratio = row.value / row.reference;
  else
    row.status = "not_applicable";
  return row;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t h = mix(mix(seed) ^ mix(counter + 0x632be59bd9b4e019ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Complex sample_lm(int n, int k, double p, std::uint64_t seed) {
  check_p(p);
  if (k < 1 || n < k + 1) throw InputError("LM model needs n >= k+1 >= 2");
  std::vector<Face> faces;
  std::uint64_t rank = 0;
  for (Face& f : all_subsets(n, k + 1)) {
    if (counter_uniform(seed, rank++) < p) faces.push_back(std::move(f));
  }
  return Complex(n, k, std::move(faces));
}

Graph sample_gnp(int n, double p, std::uint64_t seed) { return sample_lm(n, 1, p, seed); }

std::string to_string(ExperimentKind kind) {
  return kind == ExperimentKind::theta_k ? "theta_k" : "theta_ell";
}

ExperimentKind parse_kind(const std::string& s) {
  if (s == "theta_k") return ExperimentKind::theta_k;
  if (s == "theta_ell") return ExperimentKind::theta_ell;
  throw InputError("unknown experiment kind '" + s + "' (expected theta_k or theta_ell)");
}

Grid parse_grid(const std::string& spec, ExperimentKind) {
  Grid g;
  for (const std::string& part : split(spec, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InputError("grid entry '" + part + "' lacks '='");
    const std::string key = part.substr(0, eq);
    const auto values = split(part.substr(eq + 1), ',');
    if (values.empty()) throw InputError("grid entry '" + key + "' has no values");
    for (const std::string& v : values) {
      if (key == "n")
        g.n.push_back(parse_number<int>(v));
      else if (key == "p")
        g.p.push_back(parse_number<double>(v));
      else if (key == "k" || key == "ell" || key == "level")
        g.k_or_ell.push_back(parse_number<int>(v));
      else
        throw InputError("unknown grid key '" + key + "'");
    }
  }
  if (g.k_or_ell.empty()) g.k_or_ell.push_back(2);
  if (g.n.empty() || g.p.empty()) throw InputError("grid needs n and p values");
  for (double p : g.p) check_p(p);
  for (int n : g.n)
    for (int l : g.k_or_ell) {
      if (l < 1 || n <= l) throw InputError("grid has n <= k");
      // the SDP block has binom(n, l) rows at most (exactly that for theta_k)
      if (binomial(n, l) > 500)
        throw InputError("grid cell n=" + std::to_string(n) + " exceeds the 500-row block limit");
    }
  return g;
}

std::vector<ExperimentRow> scaling_experiment(ExperimentKind kind, const Grid& grid,
                                              const std::vector<std::uint64_t>& seeds,
                                              const sdp::SolveParams& params) {
  std::vector<ExperimentRow> rows;
  for (int n : grid.n)
    for (int l : grid.k_or_ell)
      for (double p : grid.p)
        for (std::uint64_t seed : seeds) {
          try {
            rows.push_back(kind == ExperimentKind::theta_k ? run_theta_k(n, l, p, seed, params)
                                                            : run_theta_ell(n, l, p, seed, params));
          } catch (const std::exception& e) {
            ExperimentRow r = make_row(kind, n, l, p, seed);
            r.status = std::string("error: ") + e.what();
            rows.push_back(r);
          }
        }
  return rows;
}

double quantile(std::vector<double> data, double q) {
  if (data.empty()) throw InputError("quantile of no data");
  std::sort(data.begin(), data.end());
  const double pos = q * (data.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, data.size() - 1);
  return data[lo] + (pos - lo) * (data[hi] - data[lo]);
}

std::vector<CellSummary> summarize(const std::vector<ExperimentRow>& rows) {
  std::map<std::tuple<int, int, int, double>, std::pair<std::vector<double>, std::vector<double>>> cells;
  for (const ExperimentRow& r : rows) {
    auto& c = cells[{static_cast<int>(r.kind), r.n, r.k_or_ell, r.p}];
    if (r.ratio) {
      c.first.push_back(*r.ratio);
      c.second.push_back(r.value);
    }
  }
  std::vector<CellSummary> out;
  for (const auto& [key, data] : cells) {
    CellSummary s;
    s.kind = static_cast<ExperimentKind>(std::get<0>(key));
    s.n = std::get<1>(key);
    s.k_or_ell = std::get<2>(key);
    s.p = std::get<3>(key);
    s.samples = static_cast<int>(data.first.size());
    if (s.samples > 0) {
      s.median_ratio = quantile(data.first, 0.5);
      s.q1_ratio = quantile(data.first, 0.25);
      s.q3_ratio = quantile(data.first, 0.75);
      s.median_value = quantile(data.second, 0.5);
    }
    out.push_back(s);
  }
  return out;
}

double median_spread(const std::vector<CellSummary>& cells) {
  double lo = 0.0, hi = 0.0;
  int used = 0;
  for (const CellSummary& c : cells) {
    if (c.samples == 0) continue;
    lo = used == 0 ? c.median_ratio : std::min(lo, c.median_ratio);
    hi = used == 0 ? c.median_ratio : std::max(hi, c.median_ratio);
    ++used;
  }
  return used < 2 || lo <= 0.0 ? 1.0 : hi / lo;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "kind,n,k_or_ell,p,seed,value,reference,ratio,status,lower_bound,upper_bound,alpha,regime\n";
  for (const ExperimentRow& r : rows) {
    std::string status = r.status;
    if (status.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : status) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      status = q + "\"";
    }
    out << to_string(r.kind) << ',' << r.n << ',' << r.k_or_ell << ',' << fmt(r.p) << ',' << r.seed
        << ',' << fmt(r.value) << ',' << fmt(r.reference) << ',' << (r.ratio ? fmt(*r.ratio) : "NA")
        << ',' << status << ',' << fmt(r.lower_bound) << ',' << fmt(r.upper_bound) << ','
        << r.alpha << ',' << (r.in_regime ? "in_regime" : "out_of_regime") << '\n';
  }
}

LinkSpectraReport link_spectra_check(const Complex& x, double tol) {
  const int n = x.n(), k = x.k();
  const Complex xbar = complement(x);
  const FaceIndex all = FaceIndex::all(n, k);
  Eigen::MatrixXd abar = Eigen::MatrixXd::Zero(all.size(), all.size());
  for (const Face& h : xbar.top_faces()) {
    const std::vector<Face> fs = facets(h);
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        const int a = all.at(fs[i]), b = all.at(fs[j]);
        abar(a, b) = abar(b, a) = epsilon(fs[i], fs[j]);
      }
  }
  LinkSpectraReport rep;
  rep.lambda_min_complement = all.size() > 0 ? linalg::lambda_min(abar) : 0.0;
  bool first = true;
  for (const Face& base : all_subsets(n, k - 1)) {
    const Link lk = full_link(xbar, base);
    if (lk.graph.n() == 0) continue;
    const double lm = linalg::lambda_min(graph_adjacency(lk.graph));
    rep.min_link_lambda = first ? lm : std::min(rep.min_link_lambda, lm);
    first = false;
  }
  rep.rhs = k * rep.min_link_lambda;
  rep.holds = rep.lambda_min_complement >= rep.rhs - tol;
  return rep;
}

}  // namespace simptheta
