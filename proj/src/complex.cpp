#include "simptheta/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "simptheta/errors.hpp"

namespace simptheta {

std::string face_label(const Face& f) {
  if (f.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(f[i]);
  }
  return out;
}

Face parse_face_label(const std::string& label) {
  if (label == "{}") return {};
  Face f;
  std::stringstream ss(label);
  std::string part;
  while (std::getline(ss, part, '-')) {
    if (part.empty()) throw InputError("malformed face label '" + label + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw InputError("malformed face label '" + label + "'");
    }
    if (used != part.size() || v < 0) throw InputError("malformed face label '" + label + "'");
    f.push_back(v);
  }
  if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end())
    throw InputError("face label '" + label + "' is not strictly increasing");
  return f;
}

std::int64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::int64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

std::vector<Face> all_subsets(int n, int r) {
  std::vector<Face> out;
  if (r < 0 || r > n) return out;
  out.reserve(static_cast<std::size_t>(binomial(n, r)));
  Face cur(r);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = r - 1;
    while (i >= 0 && cur[i] == n - r + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

Face face_union(const Face& a, const Face& b) {
  Face out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Face face_intersection(const Face& a, const Face& b) {
  Face out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subface(const Face& small, const Face& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Face> facets(const Face& f) {
  std::vector<Face> out;
  out.reserve(f.size());
  for (std::size_t skip = f.size(); skip-- > 0;) {
    Face g;
    g.reserve(f.size() - 1);
    for (std::size_t t = 0; t < f.size(); ++t)
      if (t != skip) g.push_back(f[t]);
    out.push_back(std::move(g));
  }
  return out;
}

int incidence(const Face& h, const Face& f) {
  if (h.size() != f.size() + 1)
    throw InputError("incidence: dimension mismatch between " + face_label(h) + " and " +
                     face_label(f));
  // f must equal h with exactly one vertex removed; find its position.
  std::size_t j = 0;
  while (j < f.size() && h[j] == f[j]) ++j;
  for (std::size_t t = j; t < f.size(); ++t)
    if (h[t + 1] != f[t]) return 0;
  return (j % 2 == 0) ? 1 : -1;
}

int epsilon(const Face& a, const Face& b) {
  if (a.size() != b.size()) throw InputError("epsilon: faces of different dimension");
  const Face common = face_intersection(a, b);
  if (common.size() + 1 != a.size()) return 0;
  return incidence(a, common) * incidence(b, common);
}

FaceIndex::FaceIndex(std::vector<Face> faces) : faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  if (!faces_.empty()) {
    dim_ = dim(faces_.front());
    for (const Face& f : faces_)
      if (dim(f) != dim_) throw InputError("FaceIndex: mixed dimensions");
  }
}

std::optional<int> FaceIndex::find(const Face& f) const {
  auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
  if (it == faces_.end() || *it != f) return std::nullopt;
  return static_cast<int>(it - faces_.begin());
}

int FaceIndex::at(const Face& f) const {
  auto i = find(f);
  if (!i) throw InputError("face " + face_label(f) + " is not indexed");
  return *i;
}

Complex::Complex(int n, int k, std::vector<Face> k_faces) : n_(n), k_(k) {
  if (n < 0) throw InputError("vertex count must be non-negative");
  if (k < 0) throw InputError("dimension must be non-negative");
  for (Face& f : k_faces) {
    std::sort(f.begin(), f.end());
    if (static_cast<int>(f.size()) != k + 1)
      throw InputError("face " + face_label(f) + " does not have " + std::to_string(k + 1) +
                       " vertices");
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw InputError("face " + face_label(f) + " repeats a vertex");
    if (f.front() < 0 || f.back() >= n)
      throw InputError("face " + face_label(f) + " has a vertex outside 0.." +
                       std::to_string(n - 1));
  }
  faces_.resize(k + 2);
  faces_[k + 1] = FaceIndex(std::move(k_faces));
  for (int d = k - 1; d >= -1; --d) {
    std::vector<Face> lower;
    for (const Face& h : faces_[d + 2]) {
      for (std::size_t skip = 0; skip < h.size(); ++skip) {
        Face f;
        f.reserve(h.size() - 1);
        for (std::size_t t = 0; t < h.size(); ++t)
          if (t != skip) f.push_back(h[t]);
        lower.push_back(std::move(f));
      }
    }
    faces_[d + 1] = FaceIndex(std::move(lower));
  }
}

Complex Complex::complete(int n, int k) {
  if (k < 0 || n < k + 1)
    throw InputError("complete complex needs n >= k + 1 >= 1 (got n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ")");
  return Complex(n, k, all_subsets(n, k + 1));
}

Complex Complex::graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Face> faces;
  faces.reserve(edges.size());
  for (auto [a, b] : edges) faces.push_back({a, b});
  return Complex(n, 1, std::move(faces));
}

const FaceIndex& Complex::faces(int d) const {
  if (d < -1 || d > k_)
    throw InputError("face dimension " + std::to_string(d) + " outside -1.." + std::to_string(k_));
  return faces_[d + 1];
}

bool Complex::has_face(const Face& f) const {
  const int d = dim(f);
  if (d < -1 || d > k_) return false;
  return faces_[d + 1].contains(f);
}

int Complex::degree(const Face& f) const {
  const int d = dim(f);
  if (d >= k_ || d < -1) return 0;
  int deg = 0;
  for (const Face& h : faces_[d + 2])
    if (is_subface(f, h)) ++deg;
  return deg;
}

bool Complex::has_complete_skeleton() const {
  return faces(k_ - 1).size() == binomial(n_, k_);
}

Complex complement(const Complex& x) {
  std::vector<Face> missing;
  for (Face& f : all_subsets(x.n(), x.k() + 1))
    if (!x.top_faces().contains(f)) missing.push_back(std::move(f));
  return Complex(x.n(), x.k(), std::move(missing));
}

Complex subcomplex(const Complex& x, const std::vector<Face>& k_faces) {
  for (const Face& f : k_faces)
    if (!x.top_faces().contains(f)) throw InputError("subcomplex: " + face_label(f) + " not in X");
  return Complex(x.n(), x.k(), k_faces);
}

Complex disjoint_union(const Complex& a, const Complex& b) {
  if (a.k() != b.k()) throw InputError("disjoint_union: dimensions differ");
  std::vector<Face> faces = a.top_faces().faces();
  for (Face f : b.top_faces()) {
    for (int& v : f) v += a.n();
    faces.push_back(std::move(f));
  }
  return Complex(a.n() + b.n(), a.k(), std::move(faces));
}

Link link(const Complex& x, const Face& base) {
  if (x.k() < 1) throw InputError("link: complex must have dimension >= 1");
  if (dim(base) != x.k() - 2 || !x.has_face(base))
    throw InputError("link: " + face_label(base) + " is not a (k-2)-face of X");
  Link out{{}, Graph(0, 1, {})};
  for (int v = 0; v < x.n(); ++v) {
    if (std::binary_search(base.begin(), base.end(), v)) continue;
    if (x.has_face(face_union(base, {v}))) out.vertices.push_back(v);
  }
  std::vector<Face> edges;
  const int m = static_cast<int>(out.vertices.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (x.top_faces().contains(face_union(base, {out.vertices[i], out.vertices[j]})))
        edges.push_back({i, j});
  out.graph = Graph(m, 1, std::move(edges));
  return out;
}

IndependenceComplex independence_complex(const Complex& x, int up_to) {
  const int k = x.k();
  if (up_to < k - 1)
    throw InputError("independence_complex: level " + std::to_string(up_to) + " below k-1");
  IndependenceComplex ind;
  ind.n = x.n();
  ind.k = k;
  ind.levels.reserve(up_to + 2);
  for (int i = -1; i < k && i <= up_to; ++i) ind.levels.emplace_back(all_subsets(x.n(), i + 1));
  for (int i = k; i <= up_to; ++i) {
    const FaceIndex& prev = ind.levels.back();
    std::vector<Face> next;
    for (const Face& f : prev) {
      const int start = f.empty() ? 0 : f.back() + 1;
      for (int v = start; v < x.n(); ++v) {
        Face cand = f;
        cand.push_back(v);
        bool ok = true;
        if (i == k) {
          ok = !x.top_faces().contains(cand);
        } else {
          // every facet must already be independent
          for (std::size_t skip = 0; skip + 1 < cand.size() && ok; ++skip) {
            Face sub;
            for (std::size_t t = 0; t < cand.size(); ++t)
              if (t != skip) sub.push_back(cand[t]);
            ok = prev.contains(sub);
          }
        }
        if (ok) next.push_back(std::move(cand));
      }
    }
    ind.levels.emplace_back(std::move(next));
  }
  return ind;
}

bool is_independent(const Complex& x, const std::vector<int>& vertices) {
  Face s = vertices;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (static_cast<int>(s.size()) < x.k() + 1) return true;
  for (const Face& h : x.top_faces())
    if (is_subface(h, s)) return false;
  return true;
}

std::vector<std::vector<Face>> connected_components(const Complex& x) {
  const FaceIndex& top = x.top_faces();
  std::vector<int> parent(top.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::map<Face, int> first_owner;
  for (int i = 0; i < top.size(); ++i) {
    const Face& h = top[i];
    for (std::size_t skip = 0; skip < h.size(); ++skip) {
      Face f;
      for (std::size_t t = 0; t < h.size(); ++t)
        if (t != skip) f.push_back(h[t]);
      auto [it, inserted] = first_owner.emplace(std::move(f), i);
      if (!inserted) {
        int a = find(i), b = find(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<int, std::vector<Face>> groups;
  for (int i = 0; i < top.size(); ++i) groups[find(i)].push_back(top[i]);
  std::vector<std::vector<Face>> out;
  for (auto& [root, faces] : groups) out.push_back(std::move(faces));
  return out;
}

Complex complete_tripartite(int m) {
  if (m < 1) throw InputError("tripartite complex needs m >= 1");
  std::vector<Face> faces;
  for (int a = 0; a < m; ++a)
    for (int b = m; b < 2 * m; ++b)
      for (int c = 2 * m; c < 3 * m; ++c) faces.push_back({a, b, c});
  return Complex(3 * m, 2, std::move(faces));
}

Complex complete_bipartite(int m) {
  if (m < 1) throw InputError("bipartite complex needs m >= 1");
  std::vector<Face> faces;
  for (Face& h : all_subsets(2 * m, 3)) {
    int in_a = 0;
    for (int v : h) in_a += v < m;
    if (in_a == 1 || in_a == 2) faces.push_back(std::move(h));
  }
  return Complex(2 * m, 2, std::move(faces));
}

Graph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Complex::graph(n, edges);
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Complex::graph(10, edges);
}

}  // namespace simptheta
