#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "mefkit/abelian.hpp"
#include "mefkit/error.hpp"

namespace mefkit {

using Vertex = int;
// Stored with the smaller endpoint first.
using Edge = std::pair<Vertex, Vertex>;
// Cyclic boundary a-b-c-d-a; all four boundary pairs must be edges.
using Square = std::array<Vertex, 4>;
// Always sorted and duplicate free.
using VertexSet = std::vector<Vertex>;

// Finite model: vertices 0..n-1, undirected edges, square 2-cells. Immutable
// after construction; construction validates everything.
class CellComplex {
 public:
  CellComplex(int vertex_count, std::vector<Edge> edges,
              std::vector<Square> squares);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Square>& squares() const { return squares_; }

  bool has_edge(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }

  // Structural equality; squares compare by canonical cyclic form.
  bool operator==(const CellComplex& rhs) const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Square> squares_;
  std::vector<std::vector<Vertex>> adjacency_;
};

using ComplexPtr = std::shared_ptr<const CellComplex>;

inline ComplexPtr share(CellComplex k) {
  return std::make_shared<const CellComplex>(std::move(k));
}

// Same pointer or structurally equal.
bool same_complex(const ComplexPtr& a, const ComplexPtr& b);

CellComplex build_complex(int vertex_count, std::vector<Edge> edges,
                          std::vector<Square> squares = {});

// Components of the subgraph induced on `subset` (must be a valid vertex
// set). Each class is sorted; classes are ordered by smallest member.
std::vector<VertexSet> connected_components(const CellComplex& k,
                                            const VertexSet& subset);
std::vector<VertexSet> connected_components(const CellComplex& k);

bool is_connected(const CellComplex& k, const VertexSet& subset);

int betti0(const CellComplex& k);

// Rank of 1-cycles modulo square boundaries: E - V + b0 - rank ∂2, with the
// boundary rank computed exactly over the rationals.
int betti1(const CellComplex& k);

// Boundary operator from squares to edge chains; rows are edges in stored
// order, columns squares. Orientation: traversal pair (u, v) contributes +1
// when u < v, else -1.
IntMatrix boundary_matrix(const CellComplex& k);

// n-fold grid model of the n-torus with `resolution` vertices per axis
// (resolution >= 3) including all axis-pair squares.
CellComplex torus_grid(int dim, int resolution);

// `circles` loops of `arc_len` edges each (arc_len >= 3), glued at vertex 0.
CellComplex wedge_circles(int circles, int arc_len);

// Cycle model with n vertices and n edges, n >= 3.
CellComplex cycle_complex(int n);

bool is_vertex_set(const CellComplex& k, const VertexSet& s);
VertexSet full_vertex_set(const CellComplex& k);

// Least representative among the eight traversals (rotations, reflections)
// of the same square.
Square canonical_square(const Square& s);

}  // namespace mefkit
