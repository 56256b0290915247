#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace simptheta {

// A face is a strictly increasing list of vertex ids. Its dimension is
// size() - 1, so the empty face has dimension -1.
using Face = std::vector<int>;

inline int dim(const Face& f) { return static_cast<int>(f.size()) - 1; }

std::string face_label(const Face& f);  // "0-2-5"; the empty face is "{}"
Face parse_face_label(const std::string& label);

// binomial(n, r), zero when r < 0 or r > n.
std::int64_t binomial(int n, int r);

// All r-subsets of {0..n-1} in lexicographic order.
std::vector<Face> all_subsets(int n, int r);

// Sorted union / intersection of two faces.
Face face_union(const Face& a, const Face& b);
Face face_intersection(const Face& a, const Face& b);
bool is_subface(const Face& small, const Face& big);

// Faces of codimension one, in lexicographic order (last vertex dropped first).
std::vector<Face> facets(const Face& f);

// Signed incidence [h:f] under the orientation induced by the global vertex
// order: (-1)^j when f = h minus its j-th vertex, 0 when f is not a facet of
// h. Throws InputError unless dim(h) == dim(f) + 1.
int incidence(const Face& h, const Face& f);

// epsilon_{F,F'} = [F : F n F'][F' : F n F'] when |F n F'| = dim(F), else 0.
// Callers handle F == F' themselves (Laplacian diagonals are set explicitly).
int epsilon(const Face& a, const Face& b);

// Bijection between a list of faces of one dimension and 0..size-1, ordered
// lexicographically. Lookups are binary searches.
class FaceIndex {
 public:
  FaceIndex() = default;
  // Sorts and deduplicates; all faces must share a dimension.
  explicit FaceIndex(std::vector<Face> faces);

  static FaceIndex all(int n, int r) { return FaceIndex(all_subsets(n, r)); }

  int size() const { return static_cast<int>(faces_.size()); }
  bool empty() const { return faces_.empty(); }
  int dimension() const { return dim_; }
  const Face& operator[](int i) const { return faces_[i]; }
  const std::vector<Face>& faces() const { return faces_; }
  std::optional<int> find(const Face& f) const;
  bool contains(const Face& f) const { return find(f).has_value(); }
  // Like find() but throws InputError for faces outside the index.
  int at(const Face& f) const;

  auto begin() const { return faces_.begin(); }
  auto end() const { return faces_.end(); }

 private:
  std::vector<Face> faces_;
  int dim_ = -2;
};

// Pure k-dimensional simplicial complex on vertices 0..n-1, stored through
// its k-faces and their downward closure. Immutable after construction.
class Complex {
 public:
  // Canonicalizes each face (sorts, collapses duplicates). Throws InputError
  // on wrong cardinality, repeated vertices or out-of-range vertices.
  Complex(int n, int k, std::vector<Face> k_faces);

  static Complex complete(int n, int k);
  static Complex empty(int n, int k) { return Complex(n, k, {}); }
  // A graph is a 1-complex; edges are 2-element faces.
  static Complex graph(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  int k() const { return k_; }
  bool is_empty() const { return faces_.back().empty(); }

  // X_d for -1 <= d <= k. X_{-1} is {{}} unless the complex is empty.
  const FaceIndex& faces(int d) const;
  const FaceIndex& top_faces() const { return faces_.back(); }
  bool has_face(const Face& f) const;

  // Number of (dim(f)+1)-faces containing f.
  int degree(const Face& f) const;

  // X_{k-1} equals all k-subsets of [n].
  bool has_complete_skeleton() const;

  bool operator==(const Complex& other) const {
    return n_ == other.n_ && k_ == other.k_ &&
           top_faces().faces() == other.top_faces().faces();
  }

 private:
  int n_;
  int k_;
  std::vector<FaceIndex> faces_;  // faces_[d + 1] = X_d
};

using Graph = Complex;

Complex complement(const Complex& x);

// The complex spanned by the k-faces of x that contain one of the given
// faces of dimension k. Used to isolate components.
Complex subcomplex(const Complex& x, const std::vector<Face>& k_faces);

// Disjoint union of two complexes of the same dimension, vertices of b
// shifted by a.n().
Complex disjoint_union(const Complex& a, const Complex& b);

// lk_X(K) for K in X_{k-2}: vertices v with K+v in X_{k-1}, edges {v,w} with
// K+v+w in X_k. The graph is relabeled 0..m-1; vertices[i] is the original id.
struct Link {
  std::vector<int> vertices;
  Graph graph;
};
Link link(const Complex& x, const Face& k_minus_two_face);

// Ind_{-1}, ..., Ind_{up_to}: vertex sets (by size) containing no k-face.
// Levels beyond the largest independent set are empty.
struct IndependenceComplex {
  int n = 0;
  int k = 0;
  std::vector<FaceIndex> levels;  // levels[i + 1] = Ind_i

  int top() const { return static_cast<int>(levels.size()) - 2; }
  const FaceIndex& at(int i) const { return levels.at(i + 1); }
};
IndependenceComplex independence_complex(const Complex& x, int up_to);

bool is_independent(const Complex& x, const std::vector<int>& vertices);

// Partition of X_k by the relation "share a (k-1)-face". Components are
// listed by their smallest k-face; faces inside a component are sorted.
std::vector<std::vector<Face>> connected_components(const Complex& x);

// The two fixture families with closed-form theta numbers.
// K_{m,m,m}^2: parts {0..m-1}, {m..2m-1}, {2m..3m-1}; triangles take one
// vertex from each part.
Complex complete_tripartite(int m);
// K_{m,m}^2: parts {0..m-1}, {m..2m-1}; triangles meet both parts.
Complex complete_bipartite(int m);
Graph cycle_graph(int n);
Graph petersen_graph();

}  // namespace simptheta
