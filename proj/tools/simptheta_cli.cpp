// Command-line front end. JSON on stdout; errors as JSON on stderr with
// exit code 1 (computation) or 2 (input).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "simptheta/chain.hpp"
#include "simptheta/combinatorics.hpp"
#include "simptheta/errors.hpp"
#include "simptheta/io.hpp"
#include "simptheta/linalg.hpp"
#include "simptheta/random_lab.hpp"
#include "simptheta/theta.hpp"

using namespace simptheta;
using io::json;

namespace {

struct SolverFlags {
  double tol = 1e-7;
  int max_iter = 200000;
  double rho = 1.0;

  sdp::SolveParams params() const {
    if (!(tol > 0.0) || max_iter <= 0 || !(rho > 0.0))
      throw InputError("solver tolerances, iteration limit and rho must be positive");
    sdp::SolveParams p;
    p.tol = tol;
    p.max_iter = max_iter;
    p.rho = rho;
    return p;
  }

  void attach(CLI::App* app) {
    app->add_option("--tol", tol, "relative residual target")->capture_default_str();
    app->add_option("--max-iter", max_iter, "iteration limit")->capture_default_str();
    app->add_option("--rho", rho, "initial ADMM penalty")->capture_default_str();
  }
};

std::string format = "json";

void print_table(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) print_table(v, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) print_table(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << '\t' << j.dump() << '\n';
  }
}

void emit(const json& j) {
  if (format == "table")
    print_table(j, "", std::cout);
  else
    std::cout << j.dump() << '\n';
}

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  std::exit(code);
}

void require_converged(const sdp::SolveReport& r) {
  if (r.status != sdp::SolveStatus::converged)
    fail(1, "solver", "solver finished with status " + sdp::to_string(r.status) + " after " +
                          std::to_string(r.iterations) + " iterations");
}

json face_counts(const Complex& x) {
  json a = json::array();
  for (int d = -1; d <= x.k(); ++d) a.push_back(x.faces(d).size());
  return a;
}

void cmd_info(const std::string& path) {
  const Complex x = io::load_complex(path);
  emit({{"n", x.n()},
        {"k", x.k()},
        {"face_counts", face_counts(x)},
        {"complete_skeleton", x.has_complete_skeleton()},
        {"empty", x.is_empty()},
        {"components", connected_components(x).size()}});
}

void cmd_laplacian(const std::string& path, int dim, const std::string& which, bool spectrum) {
  const Complex x = io::load_complex(path);
  SymMatrix m = which == "up"     ? up_laplacian(x, dim)
                : which == "down" ? down_laplacian(x, dim)
                                  : adjacency(x);
  if (spectrum) {
    json ev = json::array();
    const Eigen::VectorXd s = m.size() > 0 ? simptheta::spectrum(m) : Eigen::VectorXd();
    for (Eigen::Index i = 0; i < s.size(); ++i) ev.push_back(io::round12(std::abs(s(i)) < 1e-10 ? 0.0 : s(i)));
    emit({{"which", which}, {"dim", which == "adjacency" ? x.k() - 1 : dim}, {"eigenvalues", ev}});
  } else {
    io::write_matrix_csv(std::cout, m.labels(), m.values());
  }
}

void cmd_theta(const std::string& path, std::optional<int> level, bool hat,
               const std::string& certificate, const SolverFlags& flags) {
  const Complex x = io::load_complex(path);
  if (!certificate.empty()) {
    const FaceIndex all = FaceIndex::all(x.n(), x.k());
    const Eigen::MatrixXd t = io::load_matrix_csv(certificate, all);
    const sdp::DualBound b = theta_dual_bound(x, t);
    emit({{"complex", io::complex_to_json(x)},
          {"certificate", certificate},
          {"bound", io::round12(b.value)},
          {"worst_violation", io::round12(b.worst_violation)}});
    return;
  }
  const int l = level.value_or(x.k());
  const sdp::SolveParams params = flags.params();
  const ThetaResult r = hat ? theta_hat_ell(x, l, params)
                      : l == x.k() ? theta_k(x, params)
                                   : theta_ell(x, l, params);
  emit(io::theta_json(x, r));
  require_converged(r.report);
}

void cmd_bounds(const std::string& path, const SolverFlags& flags) {
  const Complex x = io::load_complex(path);
  const sdp::SolveParams params = flags.params();
  json out;
  const GolubevBound g = golubev_bound(x);
  out["golubev"] = {{"value", io::round12(g.value)},
                    {"form", g.complete_skeleton_form ? "complete_skeleton" : "general"},
                    {"min_degrees", g.min_degrees},
                    {"max_up_eigenvalues", json::array()}};
  for (double mu : g.max_up_eigs) out["golubev"]["max_up_eigenvalues"].push_back(io::round12(mu));

  const Graph skeleton = [&] {
    std::vector<std::pair<int, int>> edges;
    if (x.k() >= 1)
      for (const Face& e : x.faces(1)) edges.emplace_back(e[0], e[1]);
    return Complex::graph(x.n(), edges);
  }();
  try {
    out["ratio_1_skeleton"] = io::round12(ratio_bound(skeleton));
  } catch (const InputError& e) {
    out["ratio_1_skeleton"] = nullptr;
    out["ratio_note"] = e.what();
  }
  if (x.is_empty() || x.has_complete_skeleton())
    out["link"] = io::round12(link_bound(x, params));
  else
    out["link"] = nullptr;

  const ThetaResult t = theta_k(x, params);
  out["theta"] = io::round12(t.value);
  out["theta_status"] = sdp::to_string(t.report.status);
  if (x.n() <= 20) {
    const IndependentSet a = alpha(x);
    out["alpha"] = a.size;
    out["sandwich"] = {{"alpha_le_theta", a.size <= t.value + 1e-4},
                       {"theta_le_golubev", !g.complete_skeleton_form || t.value <= g.value + 1e-4},
                       {"theta_le_n", t.value <= x.n() + 1e-4}};
  }
  emit(out);
  require_converged(t.report);
}

void cmd_alpha(const std::string& path) {
  const Complex x = io::load_complex(path);
  const IndependentSet a = alpha(x);
  emit({{"alpha", a.size}, {"witness", a.witness}});
}

void cmd_chi(const std::string& path) {
  const Complex x = io::load_complex(path);
  const Coloring c = chi_weak(x);
  const Coloring s = chi_skeleton(x);
  emit({{"chi", c.colors}, {"coloring", c.color}, {"chi_1_skeleton", s.colors}, {"skeleton_coloring", s.color}});
}

void cmd_chik(const std::string& path, std::int64_t budget) {
  const Complex x = io::load_complex(path);
  const ChiKResult r = chi_k(x, budget);
  json out{{"status", r.status == ChiKStatus::found ? "found" : "budget_exhausted"},
           {"lower_bound", r.lower_bound},
           {"nodes", r.nodes},
           {"homomorphism", io::homomorphism_json(r.witness)}};
  if (r.status == ChiKStatus::found)
    out["chi_k"] = r.value;
  else
    out["upper_bound"] = r.value;
  emit(out);
  if (r.status != ChiKStatus::found) fail(1, "search", "node budget exhausted before chi_k was settled");
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta numbers of simplicial complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  SolverFlags flags;
  std::string path;

  auto* info = app.add_subcommand("info", "face counts and structure");
  info->add_option("complex", path)->required();

  int dim = 0;
  std::string which = "down";
  bool spectrum = false;
  auto* lap = app.add_subcommand("laplacian", "Laplacian or adjacency matrix as CSV");
  lap->add_option("complex", path)->required();
  lap->add_option("--dim", dim, "face dimension i");
  lap->add_option("--which", which)->check(CLI::IsMember({"up", "down", "adjacency"}));
  lap->add_flag("--spectrum", spectrum, "print eigenvalues instead of the matrix");

  std::optional<int> level;
  bool hat = false;
  std::string certificate;
  auto* th = app.add_subcommand("theta", "solve a theta program");
  th->add_option("complex", path)->required();
  th->add_option("--level", level, "hierarchy level (default k)");
  th->add_flag("--hat", hat, "add the tau-image PSD blocks");
  th->add_option("--certificate", certificate, "dual certificate CSV; evaluates the bound instead of solving");
  flags.attach(th);

  auto* bd = app.add_subcommand("bounds", "eigenvalue bounds and sandwich summary");
  bd->add_option("complex", path)->required();
  flags.attach(bd);

  auto* al = app.add_subcommand("alpha", "independence number with witness");
  al->add_option("complex", path)->required();
  auto* ch = app.add_subcommand("chi", "weak chromatic number and chromatic number of X_1");
  ch->add_option("complex", path)->required();
  std::int64_t budget = 20'000'000;
  auto* ck = app.add_subcommand("chik", "chi_k via homomorphism search");
  ck->add_option("complex", path)->required();
  ck->add_option("--budget", budget, "search node budget")->capture_default_str();

  std::string out_path;
  int n = 0, k = 2, m = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a complex");
  gen->require_subcommand(1);
  gen->add_option("-o,--output", out_path, "write here instead of stdout");
  auto* g_complete = gen->add_subcommand("complete", "K_n^k");
  g_complete->add_option("--n", n)->required();
  g_complete->add_option("--k", k)->capture_default_str();
  auto* g_tri = gen->add_subcommand("tripartite", "complete tripartite 2-complex");
  g_tri->add_option("--m", m)->required();
  auto* g_bip = gen->add_subcommand("bipartite", "complete bipartite 2-complex");
  g_bip->add_option("--m", m)->required();
  auto* g_lm = gen->add_subcommand("lm", "Linial-Meshulam sample");
  g_lm->add_option("--n", n)->required();
  g_lm->add_option("--k", k)->capture_default_str();
  g_lm->add_option("--p", p)->required();
  g_lm->add_option("--seed", seed)->capture_default_str();
  auto* g_gnp = gen->add_subcommand("gnp", "Erdos-Renyi graph");
  g_gnp->add_option("--n", n)->required();
  g_gnp->add_option("--p", p)->required();
  g_gnp->add_option("--seed", seed)->capture_default_str();
  for (auto* sub : {g_complete, g_tri, g_bip, g_lm, g_gnp})
    sub->add_option("-o,--output", out_path, "write here instead of stdout");

  std::string kind = "theta_k", grid, seeds_spec = "1,2,3,4,5", summary_path;
  auto* ex = app.add_subcommand("experiment", "random-complex experiments");
  ex->require_subcommand(1);
  auto* sc = ex->add_subcommand("scaling", "theta scaling table (CSV)");
  sc->add_option("--kind", kind)->check(CLI::IsMember({"theta_k", "theta_ell"}))->capture_default_str();
  sc->add_option("--grid", grid, "e.g. \"n=8,10,12;p=0.5;k=2\"")->required();
  sc->add_option("--seeds", seeds_spec)->capture_default_str();
  sc->add_option("-o,--output", out_path, "CSV path (default stdout)");
  sc->add_option("--summary", summary_path, "per-cell medians as JSON");
  flags.attach(sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail(2, "usage", e.what());
  }

  try {
    if (*info) cmd_info(path);
    else if (*lap) cmd_laplacian(path, dim, which, spectrum);
    else if (*th) cmd_theta(path, level, hat, certificate, flags);
    else if (*bd) cmd_bounds(path, flags);
    else if (*al) cmd_alpha(path);
    else if (*ch) cmd_chi(path);
    else if (*ck) cmd_chik(path, budget);
    else if (*gen) {
      Complex x = *g_complete ? Complex::complete(n, k)
                  : *g_tri    ? complete_tripartite(m)
                  : *g_bip    ? complete_bipartite(m)
                  : *g_lm     ? sample_lm(n, k, p, seed)
                              : sample_gnp(n, p, seed);
      write_out(out_path, io::complex_to_json(x).dump() + "\n");
    } else if (*sc) {
      const ExperimentKind ek = parse_kind(kind);
      std::vector<std::uint64_t> seeds;
      std::stringstream ss(seeds_spec);
      for (std::string s; std::getline(ss, s, ',');) {
        try {
          std::size_t used = 0;
          seeds.push_back(std::stoull(s, &used));
          if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::logic_error&) {
          throw InputError("bad seed '" + s + "'");
        }
      }
      const auto rows = scaling_experiment(ek, parse_grid(grid, ek), seeds, flags.params());
      std::ostringstream csv;
      write_csv(csv, rows);
      write_out(out_path, csv.str());
      if (!summary_path.empty()) {
        const auto cells = summarize(rows);
        json s{{"cells", io::summary_json(cells)}, {"median_spread", io::round12(median_spread(cells))}};
        std::ofstream f(summary_path);
        if (!f) throw InputError("cannot write " + summary_path);
        f << s.dump(2) << '\n';
      }
    }
  } catch (const InputError& e) {
    fail(2, "input", e.what());
  } catch (const ComputeError& e) {
    fail(1, "compute", e.what());
  } catch (const std::exception& e) {
    fail(1, "compute", e.what());
  }
  return 0;
}
