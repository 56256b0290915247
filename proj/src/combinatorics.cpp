#include "simptheta/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "simptheta/chain.hpp"
#include "simptheta/errors.hpp"
#include "simptheta/linalg.hpp"

namespace simptheta {

namespace {

using Mask = std::uint64_t;

Mask mask_of(const Face& f) {
  Mask m = 0;
  for (int v : f) m |= Mask{1} << v;
  return m;
}

// For each vertex v, the k-faces through v with v removed.
std::vector<std::vector<Mask>> faces_through(const Complex& x) {
  if (x.n() > 64) throw InputError("exact search supports at most 64 vertices");
  std::vector<std::vector<Mask>> out(x.n());
  for (const Face& h : x.top_faces()) {
    const Mask m = mask_of(h);
    for (int v : h) out[v].push_back(m & ~(Mask{1} << v));
  }
  return out;
}

struct AlphaSearch {
  int n;
  std::vector<std::vector<Mask>> through;
  int best = -1;
  Mask best_set = 0;

  void run(int v, Mask chosen, int count) {
    if (count + (n - v) <= best) return;
    if (v == n) {
      best = count;
      best_set = chosen;
      return;
    }
    bool ok = true;
    for (Mask m : through[v])
      if ((m & chosen) == m) {
        ok = false;
        break;
      }
    if (ok) run(v + 1, chosen | (Mask{1} << v), count + 1);
    run(v + 1, chosen, count);
  }
};

struct ColorSearch {
  int n;
  int colors;
  std::vector<std::vector<Mask>> through;
  std::vector<Mask> classes;
  std::vector<int> color;

  bool run(int v, int used) {
    if (v == n) return true;
    for (int c = 0; c < std::min(used + 1, colors); ++c) {
      bool ok = true;
      for (Mask m : through[v])
        if ((m & classes[c]) == m) {
          ok = false;
          break;
        }
      if (!ok) continue;
      classes[c] |= Mask{1} << v;
      color[v] = c;
      if (run(v + 1, std::max(used, c + 1))) return true;
      classes[c] &= ~(Mask{1} << v);
    }
    return false;
  }
};

// Incremental Gaussian elimination over GF(2). Rows are kept with their
// lowest set bit as pivot, so removing the most recent row leaves the rest
// valid.
class Gf2System {
 public:
  explicit Gf2System(int vars) : vars_(vars), words_((vars + 63) / 64), pivot_row_(vars, -1) {}

  using Row = std::vector<Mask>;
  Row zero_row() const { return Row(words_, 0); }
  static void flip(Row& r, int var) { r[var / 64] ^= Mask{1} << (var % 64); }

  // +1 new pivot, 0 redundant, -1 inconsistent. Only +1 pushes a row.
  int add(Row row, int rhs) {
    for (;;) {
      const int p = lowest(row);
      if (p < 0) return rhs == 0 ? 0 : -1;
      const int r = pivot_row_[p];
      if (r < 0) {
        pivot_row_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        rhs_.push_back(rhs);
        pivots_.push_back(p);
        return 1;
      }
      for (int w = 0; w < words_; ++w) row[w] ^= rows_[r][w];
      rhs ^= rhs_[r];
    }
  }

  void pop() {
    pivot_row_[pivots_.back()] = -1;
    rows_.pop_back();
    rhs_.pop_back();
    pivots_.pop_back();
  }

  // Free variables set to 0.
  std::vector<int> solution() const {
    std::vector<int> x(vars_, 0);
    for (int p = vars_ - 1; p >= 0; --p) {
      const int r = pivot_row_[p];
      if (r < 0) continue;
      int acc = rhs_[r];
      for (int v = p + 1; v < vars_; ++v)
        if ((rows_[r][v / 64] >> (v % 64)) & 1) acc ^= x[v];
      x[p] = acc;
    }
    return x;
  }

 private:
  int lowest(const Row& r) const {
    for (int w = 0; w < words_; ++w)
      if (r[w]) return w * 64 + std::countr_zero(r[w]);
    return -1;
  }

  int vars_;
  int words_;
  std::vector<int> pivot_row_;
  std::vector<Row> rows_;
  std::vector<int> rhs_;
  std::vector<int> pivots_;
};

// Variable layout shared by the checker and the search: X_k, X_{k-1},
// X'_k, X'_{k-1}.
struct OrientationVars {
  int src_top, src_low, dst_top, dst_low;
  int total() const { return src_top + src_low + dst_top + dst_low; }
  int h(int i) const { return i; }
  int f(int i) const { return src_top + i; }
  int h2(int i) const { return src_top + src_low + i; }
  int f2(int i) const { return src_top + src_low + dst_top + i; }
};

// Equation b_H + b_F + b'_{H'} + b'_{F'} = ([H:F] != [H':F']).
int add_incidence_equation(Gf2System& sys, const OrientationVars& v, int hi, int fi, int h2i,
                           int f2i, int inc, int inc2) {
  Gf2System::Row row = sys.zero_row();
  Gf2System::flip(row, v.h(hi));
  Gf2System::flip(row, v.f(fi));
  Gf2System::flip(row, v.h2(h2i));
  Gf2System::flip(row, v.f2(f2i));
  return sys.add(std::move(row), inc != inc2 ? 1 : 0);
}

}  // namespace

IndependentSet alpha(const Complex& x) {
  AlphaSearch s{x.n(), faces_through(x)};
  s.run(0, 0, 0);
  IndependentSet out;
  out.size = s.best;
  for (int v = 0; v < x.n(); ++v)
    if ((s.best_set >> v) & 1) out.witness.push_back(v);
  return out;
}

Coloring chi_weak(const Complex& x) {
  const int n = x.n();
  if (n == 0) return {0, {}};
  const auto through = faces_through(x);
  const int a = alpha(x).size;
  for (int c = std::max(1, (n + a - 1) / std::max(a, 1)); c <= n; ++c) {
    ColorSearch s{n, c, through, std::vector<Mask>(c, 0), std::vector<int>(n, -1)};
    if (s.run(0, 0)) return {c, s.color};
  }
  throw ComputeError("no weak coloring found");  // unreachable for k >= 1
}

Coloring chi_skeleton(const Complex& x) {
  if (x.k() < 1) throw InputError("1-skeleton needs k >= 1");
  if (x.k() == 1) return chi_weak(x);
  std::vector<std::pair<int, int>> edges;
  for (const Face& e : x.faces(1)) edges.emplace_back(e[0], e[1]);
  return chi_weak(Complex::graph(x.n(), edges));
}

HomomorphismCheck check_homomorphism(const Complex& x, const Complex& target,
                                     const std::map<Face, Face>& f,
                                     const std::map<Face, Face>& assignment) {
  const int k = x.k();
  if (target.k() != k)
    throw InputError("homomorphism between complexes of dimensions " + std::to_string(k) + " and " +
                     std::to_string(target.k()));
  const FaceIndex& low = x.faces(k - 1);
  const FaceIndex& top = x.top_faces();
  const FaceIndex& low2 = target.faces(k - 1);
  const FaceIndex& top2 = target.top_faces();
  for (const auto& [from, to] : f) {
    if (!low.contains(from))
      throw InputError("map is defined on " + face_label(from) + ", which is not a (k-1)-face");
    if (!low2.contains(to))
      throw InputError("image " + face_label(to) + " is not a (k-1)-face of the target");
  }
  for (const Face& fc : low)
    if (!f.count(fc)) throw InputError("map is missing the face " + face_label(fc));
  for (const auto& [from, to] : assignment)
    if (!top.contains(from) || !top2.contains(to))
      throw InputError("assignment entry " + face_label(from) + " -> " + face_label(to) +
                       " is not between k-faces");

  HomomorphismCheck out;
  out.witness.f = f;
  out.facet_condition = true;
  std::vector<int> target_of(top.size(), -1);
  for (int hi = 0; hi < top.size(); ++hi) {
    const Face& h = top[hi];
    std::set<Face> images;
    Face u;
    for (const Face& fc : facets(h)) {
      const Face& img = f.at(fc);
      images.insert(img);
      u = face_union(u, img);
    }
    auto fail = [&](const std::string& why) {
      out.facet_condition = false;
      out.reason = "condition (1) fails at " + face_label(h) + ": " + why;
    };
    if (static_cast<int>(images.size()) != k + 1) {
      fail("facet images are not distinct");
      break;
    }
    if (static_cast<int>(u.size()) != k + 1 || !top2.contains(u)) {
      fail("facet images do not bound a k-face of the target");
      break;
    }
    if (auto it = assignment.find(h); it != assignment.end() && it->second != u) {
      fail("assigned to " + face_label(it->second) + " but the facets span " + face_label(u));
      break;
    }
    target_of[hi] = top2.at(u);
    out.witness.assignment[h] = u;
  }
  if (!out.facet_condition) return out;

  const OrientationVars vars{top.size(), low.size(), top2.size(), low2.size()};
  Gf2System sys(vars.total());
  for (int hi = 0; hi < top.size() && out.reason.empty(); ++hi) {
    const Face& h = top[hi];
    const Face& h2 = top2[target_of[hi]];
    for (const Face& fc : facets(h)) {
      const Face& img = f.at(fc);
      if (add_incidence_equation(sys, vars, hi, low.at(fc), target_of[hi], low2.at(img),
                                 incidence(h, fc), incidence(h2, img)) < 0) {
        out.reason = "condition (2): no orientations satisfy the incidences (inconsistent at " +
                     face_label(h) + ", " + face_label(fc) + ")";
        break;
      }
    }
  }
  if (!out.reason.empty()) return out;
  out.orientation_condition = true;
  const std::vector<int> bits = sys.solution();
  auto sign = [&](int var) { return bits[var] ? -1 : 1; };
  for (int i = 0; i < top.size(); ++i) out.witness.source_signs[top[i]] = sign(vars.h(i));
  for (int i = 0; i < low.size(); ++i) out.witness.source_signs[low[i]] = sign(vars.f(i));
  for (int i = 0; i < top2.size(); ++i) out.witness.target_signs[top2[i]] = sign(vars.h2(i));
  for (int i = 0; i < low2.size(); ++i) out.witness.target_signs[low2[i]] = sign(vars.f2(i));
  return out;
}

std::map<Face, Face> lift_coloring(const Complex& x, const std::vector<int>& color) {
  if (static_cast<int>(color.size()) != x.n())
    throw InputError("coloring has " + std::to_string(color.size()) + " entries for " +
                     std::to_string(x.n()) + " vertices");
  std::map<Face, Face> f;
  for (const Face& fc : x.faces(x.k() - 1)) {
    Face img;
    for (int v : fc) img.push_back(color[v]);
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end())
      throw InputError("coloring is not proper on " + face_label(fc));
    f[fc] = img;
  }
  return f;
}

namespace {

// Backtracking for a homomorphism X -> K_l^k. Faces of X_{k-1} are assigned
// in order of decreasing degree; target labels are introduced in increasing
// order (K_l^k is symmetric under relabeling).
class HomSearch {
 public:
  HomSearch(const Complex& x, int l, std::int64_t& nodes, std::int64_t budget)
      : x_(x), k_(x.k()), l_(l), nodes_(nodes), budget_(budget),
        low_(x.faces(x.k() - 1)), top_(x.top_faces()),
        low2_(FaceIndex::all(l, x.k())), top2_(FaceIndex::all(l, x.k() + 1)),
        vars_{top_.size(), low_.size(), top2_.size(), low2_.size()}, sys_(vars_.total()),
        image_(low_.size(), -1), filled_(top_.size(), 0), containing_(low_.size()) {
    for (int hi = 0; hi < top_.size(); ++hi)
      for (const Face& fc : facets(top_[hi])) containing_[low_.at(fc)].push_back(hi);
    order_.resize(low_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return containing_[a].size() > containing_[b].size();
    });
  }

  // true: found; false: refuted. Throws BudgetExceeded via the flag.
  bool run() { return step(0, 0); }
  bool exhausted() const { return exhausted_; }
  std::map<Face, Face> map() const {
    std::map<Face, Face> f;
    for (int i = 0; i < low_.size(); ++i) f[low_[i]] = low2_[image_[i]];
    return f;
  }

 private:
  bool step(int pos, int used) {
    if (pos == static_cast<int>(order_.size())) return true;
    const int fi = order_[pos];
    for (int ci = 0; ci < low2_.size(); ++ci) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      const Face& img = low2_[ci];
      // New labels must be exactly used, used+1, ...
      int next = used;
      bool canonical = true;
      for (int v : img)
        if (v >= used) {
          if (v != next) {
            canonical = false;
            break;
          }
          ++next;
        }
      if (!canonical) continue;
      image_[fi] = ci;
      int pushed = 0;
      const bool ok = consistent(fi, pushed);
      if (ok && step(pos + 1, next)) return true;
      for (int p = 0; p < pushed; ++p) sys_.pop();
      for (int hi : containing_[fi]) --filled_[hi];
      image_[fi] = -1;
      if (exhausted_) return false;
    }
    return false;
  }

  // Marks fi as assigned in each k-face through it and checks the partial
  // facet condition; complete k-faces contribute their orientation equations.
  bool consistent(int fi, int& pushed) {
    bool ok = true;
    for (int hi : containing_[fi]) ++filled_[hi];
    for (int hi : containing_[fi]) {
      std::set<int> imgs;
      Face u;
      for (const Face& fc : facets(top_[hi])) {
        const int img = image_[low_.at(fc)];
        if (img < 0) continue;
        imgs.insert(img);
        u = face_union(u, low2_[img]);
      }
      if (static_cast<int>(imgs.size()) != filled_[hi] || static_cast<int>(u.size()) > k_ + 1) {
        ok = false;
        break;
      }
      if (filled_[hi] != k_ + 1) continue;
      const int h2 = top2_.at(u);
      for (const Face& fc : facets(top_[hi])) {
        const int lf = low_.at(fc);
        const Face& img = low2_[image_[lf]];
        const int r = add_incidence_equation(sys_, vars_, hi, lf, h2, image_[lf],
                                             incidence(top_[hi], fc), incidence(u, img));
        if (r < 0) {
          ok = false;
          break;
        }
        pushed += r;
      }
      if (!ok) break;
    }
    return ok;
  }

  const Complex& x_;
  int k_, l_;
  std::int64_t& nodes_;
  std::int64_t budget_;
  bool exhausted_ = false;
  FaceIndex low_, top_, low2_, top2_;
  OrientationVars vars_;
  Gf2System sys_;
  std::vector<int> image_;
  std::vector<int> filled_;
  std::vector<std::vector<int>> containing_;
  std::vector<int> order_;
};

}  // namespace

ChiKResult chi_k(const Complex& x, std::int64_t node_budget) {
  const int k = x.k();
  ChiKResult out;
  out.lower_bound = k + 1;
  if (x.is_empty()) {
    out.value = k + 1;
    out.witness = check_homomorphism(x, Complex::complete(k + 1, k), {}).witness;
    return out;
  }
  const Coloring col = chi_skeleton(x);
  for (int l = k + 1; l < col.colors; ++l) {
    HomSearch search(x, l, out.nodes, node_budget);
    const bool found = search.run();
    if (search.exhausted()) {
      out.status = ChiKStatus::budget_exhausted;
      out.value = col.colors;
      out.lower_bound = l;
      out.witness = check_homomorphism(x, Complex::complete(col.colors, k),
                                       lift_coloring(x, col.color)).witness;
      return out;
    }
    if (found) {
      const HomomorphismCheck c = check_homomorphism(x, Complex::complete(l, k), search.map());
      if (!c.ok()) throw ComputeError("search produced an invalid homomorphism: " + c.reason);
      out.value = l;
      out.lower_bound = l;
      out.witness = c.witness;
      return out;
    }
  }
  const HomomorphismCheck c =
      check_homomorphism(x, Complex::complete(col.colors, k), lift_coloring(x, col.color));
  if (!c.ok()) throw ComputeError("lifted coloring is not a homomorphism: " + c.reason);
  out.value = col.colors;
  out.lower_bound = col.colors;
  out.witness = c.witness;
  return out;
}

int component_chromatic_bound(const Complex& x) {
  const auto comps = connected_components(x);
  if (comps.empty()) return x.k() + 1;
  int best = 0;
  for (const auto& c : comps) best = std::max(best, chi_skeleton(subcomplex(x, c)).colors);
  return best;
}

RegularCheck regular_eigenvalue_check(const Complex& x, int chi_k_value, double tol) {
  RegularCheck out;
  const int k = x.k();
  const FaceIndex& low = x.faces(k - 1);
  for (int i = 0; i < low.size(); ++i) {
    const int d = x.degree(low[i]);
    if (i == 0) out.degree = d;
    if (d != out.degree) throw InputError("complex is not regular: degrees " + std::to_string(out.degree) +
                                          " and " + std::to_string(d));
  }
  out.regular = true;
  if (low.size() > 0) out.lambda_max = linalg::lambda_max(up_laplacian_exact(x, k - 1).cast<double>());
  out.applicable = chi_k_value == k + 1;
  if (out.applicable) out.holds = std::abs(out.lambda_max - (k + 1.0) * out.degree) <= tol;
  return out;
}

}  // namespace simptheta
