#include "mefkit/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace mefkit {

namespace {

std::string pair_str(Vertex u, Vertex v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

}  // namespace

Square canonical_square(const Square& s) {
  Square best = s;
  for (int rev = 0; rev < 2; ++rev) {
    Square base = s;
    if (rev) std::reverse(base.begin(), base.end());
    for (int rot = 0; rot < 4; ++rot) {
      Square cand{base[(0 + rot) % 4], base[(1 + rot) % 4],
                  base[(2 + rot) % 4], base[(3 + rot) % 4]};
      if (cand < best) best = cand;
    }
  }
  return best;
}

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CellComplex::CellComplex(int vertex_count, std::vector<Edge> edges,
                         std::vector<Square> squares)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      squares_(std::move(squares)) {
  require(vertex_count_ >= 1, ErrorCode::InvalidArgument,
          "complex needs at least one vertex");

  auto check_vertex = [&](Vertex v) {
    if (v < 0 || v >= vertex_count_) {
      fail(ErrorCode::IndexOutOfRange,
           "vertex " + std::to_string(v) + " outside 0.." +
               std::to_string(vertex_count_ - 1));
    }
  };

  std::set<Edge> seen;
  for (auto& e : edges_) {
    check_vertex(e.first);
    check_vertex(e.second);
    if (e.first == e.second) {
      fail(ErrorCode::SelfLoop, "edge " + pair_str(e.first, e.second));
    }
    if (e.first > e.second) std::swap(e.first, e.second);
    if (!seen.insert(e).second) {
      fail(ErrorCode::DuplicateEdge, "edge " + pair_str(e.first, e.second));
    }
  }

  adjacency_.assign(static_cast<std::size_t>(vertex_count_), {});
  for (const auto& [u, v] : edges_) {
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  for (const auto& s : squares_) {
    for (Vertex v : s) check_vertex(v);
    for (int i = 0; i < 4; ++i) {
      Vertex u = s[i];
      Vertex v = s[(i + 1) % 4];
      if (u == v) {
        fail(ErrorCode::SelfLoop, "square boundary pair " + pair_str(u, v));
      }
      if (!has_edge(u, v)) {
        fail(ErrorCode::SquareBoundaryMissing,
             "square boundary pair " + pair_str(u, v) + " is not an edge");
      }
    }
  }
}

bool CellComplex::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_) return false;
  const auto& nbrs = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool CellComplex::operator==(const CellComplex& rhs) const {
  if (vertex_count_ != rhs.vertex_count_) return false;
  if (edges_.size() != rhs.edges_.size()) return false;
  if (squares_.size() != rhs.squares_.size()) return false;
  auto sorted_edges = [](const std::vector<Edge>& e) {
    auto copy = e;
    std::sort(copy.begin(), copy.end());
    return copy;
  };
  if (sorted_edges(edges_) != sorted_edges(rhs.edges_)) return false;
  auto canon = [](const std::vector<Square>& sq) {
    std::vector<Square> copy;
    copy.reserve(sq.size());
    for (const auto& s : sq) copy.push_back(canonical_square(s));
    std::sort(copy.begin(), copy.end());
    return copy;
  };
  return canon(squares_) == canon(rhs.squares_);
}

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

CellComplex build_complex(int vertex_count, std::vector<Edge> edges,
                          std::vector<Square> squares) {
  return CellComplex(vertex_count, std::move(edges), std::move(squares));
}

bool is_vertex_set(const CellComplex& k, const VertexSet& s) {
  Vertex prev = -1;
  for (Vertex v : s) {
    if (v <= prev || v < 0 || v >= k.vertex_count()) return false;
    prev = v;
  }
  return true;
}

VertexSet full_vertex_set(const CellComplex& k) {
  VertexSet s(static_cast<std::size_t>(k.vertex_count()));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

std::vector<VertexSet> connected_components(const CellComplex& k,
                                            const VertexSet& subset) {
  require(is_vertex_set(k, subset), ErrorCode::InvalidArgument,
          "subset must be a sorted duplicate-free vertex set of the complex");
  if (subset.empty()) return {};

  std::vector<int> pos(static_cast<std::size_t>(k.vertex_count()), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    pos[static_cast<std::size_t>(subset[i])] = static_cast<int>(i);
  }

  UnionFind uf(static_cast<int>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (Vertex w : k.neighbors(subset[i])) {
      int j = pos[static_cast<std::size_t>(w)];
      if (j >= 0) uf.unite(static_cast<int>(i), j);
    }
  }

  std::vector<VertexSet> classes;
  std::vector<int> root_class(subset.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    int r = uf.find(static_cast<int>(i));
    if (root_class[static_cast<std::size_t>(r)] < 0) {
      root_class[static_cast<std::size_t>(r)] =
          static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(root_class[static_cast<std::size_t>(r)])]
        .push_back(subset[i]);
  }
  // Members arrive in increasing order, so each class is sorted and classes
  // are already ordered by smallest member.
  return classes;
}

std::vector<VertexSet> connected_components(const CellComplex& k) {
  return connected_components(k, full_vertex_set(k));
}

bool is_connected(const CellComplex& k, const VertexSet& subset) {
  return connected_components(k, subset).size() == 1;
}

int betti0(const CellComplex& k) {
  return static_cast<int>(connected_components(k).size());
}

IntMatrix boundary_matrix(const CellComplex& k) {
  std::map<Edge, std::size_t> index;
  for (std::size_t i = 0; i < k.edges().size(); ++i) index[k.edges()[i]] = i;
  IntMatrix d2(k.edges().size(), k.squares().size());
  for (std::size_t col = 0; col < k.squares().size(); ++col) {
    const Square& s = k.squares()[col];
    for (int i = 0; i < 4; ++i) {
      Vertex u = s[i];
      Vertex v = s[(i + 1) % 4];
      const int sign = u < v ? 1 : -1;
      const Edge e = u < v ? Edge{u, v} : Edge{v, u};
      d2.at(index.at(e), col) += sign;
    }
  }
  return d2;
}

int betti1(const CellComplex& k) {
  const int cycles = static_cast<int>(k.edges().size()) - k.vertex_count() +
                     betti0(k);
  if (k.squares().empty()) return cycles;
  const int r = static_cast<int>(rank_q(boundary_matrix(k)));
  return cycles - r;
}

CellComplex torus_grid(int dim, int resolution) {
  require(dim >= 1, ErrorCode::InvalidArgument, "dim must be >= 1");
  require(resolution >= 3, ErrorCode::ResolutionTooSmall,
          "resolution must be >= 3, got " + std::to_string(resolution));

  long long count = 1;
  for (int i = 0; i < dim; ++i) {
    count *= resolution;
    require(count <= (1 << 22), ErrorCode::InvalidArgument,
            "grid too large for a dense model");
  }
  const int n = static_cast<int>(count);

  // Vertex id: coordinate 0 varies fastest.
  auto step = [&](int id, int axis) {
    int stride = 1;
    for (int i = 0; i < axis; ++i) stride *= resolution;
    const int coord = (id / stride) % resolution;
    const int next = (coord + 1) % resolution;
    return id + (next - coord) * stride;
  };

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
  for (int v = 0; v < n; ++v) {
    for (int axis = 0; axis < dim; ++axis) {
      int w = step(v, axis);
      edges.emplace_back(std::min(v, w), std::max(v, w));
    }
  }
  std::sort(edges.begin(), edges.end());

  std::vector<Square> squares;
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < dim; ++a) {
      for (int b = a + 1; b < dim; ++b) {
        const int va = step(v, a);
        const int vab = step(va, b);
        const int vb = step(v, b);
        squares.push_back(Square{v, va, vab, vb});
      }
    }
  }
  return CellComplex(n, std::move(edges), std::move(squares));
}

CellComplex wedge_circles(int circles, int arc_len) {
  require(circles >= 1, ErrorCode::InvalidArgument, "need at least one circle");
  require(arc_len >= 3, ErrorCode::InvalidArgument,
          "arc_len must be >= 3 so loops avoid duplicate edges");
  const int n = 1 + circles * (arc_len - 1);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(circles) *
                static_cast<std::size_t>(arc_len));
  for (int c = 0; c < circles; ++c) {
    const int base = 1 + c * (arc_len - 1);
    int prev = 0;
    for (int i = 0; i < arc_len - 1; ++i) {
      const int cur = base + i;
      edges.emplace_back(std::min(prev, cur), std::max(prev, cur));
      prev = cur;
    }
    edges.emplace_back(0, prev);
  }
  std::sort(edges.begin(), edges.end());
  return CellComplex(n, std::move(edges), {});
}

CellComplex cycle_complex(int n) {
  require(n >= 3, ErrorCode::InvalidArgument, "cycle needs >= 3 vertices");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges.begin(), edges.end());
  return CellComplex(n, std::move(edges), {});
}

}  // namespace mefkit
