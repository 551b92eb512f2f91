#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mefkit/complex.hpp"
#include "mefkit/lattice.hpp"
#include "mefkit/rng.hpp"

namespace mefkit {

// Partition of 0..n-1 into classes labeled 0..class_count-1; every label
// occurs.
class Partition {
 public:
  explicit Partition(std::vector<int> class_of);

  static Partition from_classes(int vertex_count,
                                const std::vector<VertexSet>& classes);
  static Partition discrete(int n);
  static Partition indiscrete(int n);

  int size() const { return static_cast<int>(class_of_.size()); }
  int class_count() const { return class_count_; }
  int class_of(Vertex v) const {
    return class_of_[static_cast<std::size_t>(v)];
  }
  const std::vector<int>& labels() const { return class_of_; }
  std::vector<VertexSet> classes() const;

  // Relabels classes by order of first appearance.
  Partition normalized() const;

  // True iff every class of this partition sits inside a class of `coarser`.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> class_of_;
  int class_count_ = 0;
};

struct QuotientDefect {
  ErrorCode code;
  std::string detail;
};

// The three quotient-map invariants: the assignment is surjective, edges map
// to edges or collapse, and every codomain edge is hit by a domain edge.
// Empty result means the data is a valid quotient map.
std::vector<QuotientDefect> validate_quotient(
    const CellComplex& domain, const CellComplex& codomain,
    const std::vector<Vertex>& assignment);

// Vertex map that realizes the codomain as a quotient of the domain.
// Construction validates and throws the first defect.
class QuotientMap {
 public:
  QuotientMap(ComplexPtr domain, ComplexPtr codomain,
              std::vector<Vertex> assignment);

  static QuotientMap identity(ComplexPtr k);

  const CellComplex& domain() const { return *domain_; }
  const CellComplex& codomain() const { return *codomain_; }
  const ComplexPtr& domain_ptr() const { return domain_; }
  const ComplexPtr& codomain_ptr() const { return codomain_; }
  const std::vector<Vertex>& assignment() const { return assignment_; }
  Vertex operator()(Vertex v) const {
    return assignment_[static_cast<std::size_t>(v)];
  }

  Partition fiber_partition() const;

 private:
  ComplexPtr domain_;
  ComplexPtr codomain_;
  std::vector<Vertex> assignment_;
};

VertexSet fiber(const QuotientMap& p, Vertex codomain_vertex);
VertexSet preimage(const QuotientMap& p, const VertexSet& codomain_set);

// Composition x -> outer(inner(x)); inner's codomain must equal outer's
// domain (ComplexMismatch).
QuotientMap compose(const QuotientMap& outer, const QuotientMap& inner);

// Pullback of a codomain function: (T_p g)(v) = g(p(v)).
LatticeFunction pull_back(const QuotientMap& p, const LatticeFunction& g);

bool constant_on_fibers(const QuotientMap& p, const LatticeFunction& f);

// Pushes a partition forward to a quotient complex: one codomain vertex per
// class; edges are images of domain edges joining distinct classes; squares
// are images of domain squares whose four corner classes are distinct and
// whose image boundary is a 4-cycle of fresh codomain edges.
QuotientMap quotient_by_partition(ComplexPtr domain, const Partition& part);

// Criterion a: every fiber induces a connected subgraph.
bool is_monotone_fibers(const QuotientMap& p);

enum class PreimageMode { Auto, Exhaustive, Sampled };

inline constexpr int exhaustive_vertex_limit = 20;

// All nonempty connected vertex sets of the complex, each listed once.
std::vector<VertexSet> enumerate_connected_subsets(const CellComplex& k);

// Random nonempty connected vertex set (BFS growth with random frontier).
VertexSet random_connected_subset(const CellComplex& k, Rng& rng);

// Criterion b: preimages of connected codomain sets are connected.
// Exhaustive over all connected codomain subsets when the codomain has at
// most exhaustive_vertex_limit vertices (Exhaustive mode insists and throws
// CodomainTooLargeForExhaustive above the cap); otherwise checks all
// singletons, all edge pairs, and `samples` random connected subsets.
bool is_monotone_connected_preimages(const QuotientMap& p,
                                     PreimageMode mode = PreimageMode::Auto,
                                     int samples = 1000,
                                     std::uint64_t seed = 0);

// Criteria e/f: the fiber-constant function algebra is closed under irr.
// Complete witness family: pullbacks of codomain-vertex indicators, plus
// `samples` random fiber-constant functions as corroboration.
bool is_monotone_algebraic(const QuotientMap& p, int samples = 100,
                           std::uint64_t seed = 0);

// Partition generated by "same image and same component within the fiber":
// classes are the connected components of the fibers, labeled by smallest
// member.
Partition rc_partition(const QuotientMap& p);

struct MonotoneHull {
  QuotientMap q;     // domain -> hull complex, always monotone
  QuotientMap phat;  // hull complex -> codomain, phat ∘ q == p
};

// Finest monotone quotient through which p factors.
MonotoneHull monotone_hull(const QuotientMap& p);

}  // namespace mefkit
