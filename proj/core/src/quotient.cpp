#include "mefkit/quotient.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace mefkit {

Partition::Partition(std::vector<int> class_of)
    : class_of_(std::move(class_of)) {
  require(!class_of_.empty(), ErrorCode::InvalidPartition,
          "partition of an empty set");
  int max_label = -1;
  for (int c : class_of_) {
    require(c >= 0, ErrorCode::InvalidPartition, "negative class label");
    max_label = std::max(max_label, c);
  }
  class_count_ = max_label + 1;
  std::vector<char> seen(static_cast<std::size_t>(class_count_), 0);
  for (int c : class_of_) seen[static_cast<std::size_t>(c)] = 1;
  for (int c = 0; c < class_count_; ++c) {
    require(seen[static_cast<std::size_t>(c)] == 1,
            ErrorCode::InvalidPartition, "class labels must cover 0..count-1");
  }
}

Partition Partition::from_classes(int vertex_count,
                                  const std::vector<VertexSet>& classes) {
  std::vector<int> label(static_cast<std::size_t>(vertex_count), -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (Vertex v : classes[c]) {
      require(v >= 0 && v < vertex_count, ErrorCode::IndexOutOfRange,
              "class member outside the vertex range");
      require(label[static_cast<std::size_t>(v)] < 0,
              ErrorCode::InvalidPartition, "classes overlap");
      label[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
  }
  for (int v = 0; v < vertex_count; ++v) {
    require(label[static_cast<std::size_t>(v)] >= 0,
            ErrorCode::InvalidPartition, "classes must cover every vertex");
  }
  return Partition(std::move(label));
}

Partition Partition::discrete(int n) {
  std::vector<int> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) label[static_cast<std::size_t>(i)] = i;
  return Partition(std::move(label));
}

Partition Partition::indiscrete(int n) {
  return Partition(std::vector<int>(static_cast<std::size_t>(n), 0));
}

std::vector<VertexSet> Partition::classes() const {
  std::vector<VertexSet> out(static_cast<std::size_t>(class_count_));
  for (int v = 0; v < size(); ++v) {
    out[static_cast<std::size_t>(class_of(v))].push_back(v);
  }
  return out;
}

Partition Partition::normalized() const {
  std::vector<int> remap(static_cast<std::size_t>(class_count_), -1);
  std::vector<int> label(class_of_.size());
  int next = 0;
  for (std::size_t v = 0; v < class_of_.size(); ++v) {
    int& r = remap[static_cast<std::size_t>(class_of_[v])];
    if (r < 0) r = next++;
    label[v] = r;
  }
  return Partition(std::move(label));
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.size() != size()) return false;
  std::vector<int> rep(static_cast<std::size_t>(class_count_), -1);
  for (int v = 0; v < size(); ++v) {
    int& r = rep[static_cast<std::size_t>(class_of(v))];
    if (r < 0) {
      r = v;
    } else if (coarser.class_of(v) != coarser.class_of(r)) {
      return false;
    }
  }
  return true;
}

std::vector<QuotientDefect> validate_quotient(
    const CellComplex& domain, const CellComplex& codomain,
    const std::vector<Vertex>& assignment) {
  require(assignment.size() ==
              static_cast<std::size_t>(domain.vertex_count()),
          ErrorCode::InvalidArgument, "one image per domain vertex required");
  for (Vertex img : assignment) {
    require(img >= 0 && img < codomain.vertex_count(),
            ErrorCode::IndexOutOfRange,
            "assignment leaves the codomain vertex range");
  }

  std::vector<QuotientDefect> defects;

  std::vector<char> hit(static_cast<std::size_t>(codomain.vertex_count()), 0);
  for (Vertex img : assignment) hit[static_cast<std::size_t>(img)] = 1;
  for (Vertex l = 0; l < codomain.vertex_count(); ++l) {
    if (!hit[static_cast<std::size_t>(l)]) {
      defects.push_back({ErrorCode::NotSurjective,
                         "codomain vertex " + std::to_string(l) +
                             " has empty fiber"});
    }
  }

  for (const auto& [u, v] : domain.edges()) {
    const Vertex a = assignment[static_cast<std::size_t>(u)];
    const Vertex b = assignment[static_cast<std::size_t>(v)];
    if (a != b && !codomain.has_edge(a, b)) {
      defects.push_back({ErrorCode::AdjacencyViolation,
                         "edge {" + std::to_string(u) + "," +
                             std::to_string(v) + "} maps to non-edge {" +
                             std::to_string(a) + "," + std::to_string(b) +
                             "}"});
    }
  }

  std::set<Edge> covered;
  for (const auto& [u, v] : domain.edges()) {
    const Vertex a = assignment[static_cast<std::size_t>(u)];
    const Vertex b = assignment[static_cast<std::size_t>(v)];
    if (a != b) {
      covered.insert({std::min(a, b), std::max(a, b)});
    }
  }
  for (const Edge& e : codomain.edges()) {
    if (!covered.count(e)) {
      defects.push_back({ErrorCode::EdgeNotInImage,
                         "codomain edge {" + std::to_string(e.first) + "," +
                             std::to_string(e.second) +
                             "} is not the image of any domain edge"});
    }
  }
  return defects;
}

QuotientMap::QuotientMap(ComplexPtr domain, ComplexPtr codomain,
                         std::vector<Vertex> assignment)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      assignment_(std::move(assignment)) {
  require(domain_ != nullptr && codomain_ != nullptr,
          ErrorCode::InvalidArgument, "quotient map needs both complexes");
  auto defects = validate_quotient(*domain_, *codomain_, assignment_);
  if (!defects.empty()) {
    fail(defects.front().code, defects.front().detail);
  }
}

QuotientMap QuotientMap::identity(ComplexPtr k) {
  std::vector<Vertex> id(static_cast<std::size_t>(k->vertex_count()));
  for (int v = 0; v < k->vertex_count(); ++v) {
    id[static_cast<std::size_t>(v)] = v;
  }
  return QuotientMap(k, k, std::move(id));
}

Partition QuotientMap::fiber_partition() const {
  return Partition(std::vector<int>(assignment_.begin(), assignment_.end()));
}

VertexSet fiber(const QuotientMap& p, Vertex codomain_vertex) {
  require(codomain_vertex >= 0 &&
              codomain_vertex < p.codomain().vertex_count(),
          ErrorCode::IndexOutOfRange, "no such codomain vertex");
  VertexSet out;
  for (Vertex v = 0; v < p.domain().vertex_count(); ++v) {
    if (p(v) == codomain_vertex) out.push_back(v);
  }
  return out;
}

VertexSet preimage(const QuotientMap& p, const VertexSet& codomain_set) {
  require(is_vertex_set(p.codomain(), codomain_set),
          ErrorCode::InvalidArgument, "invalid codomain vertex set");
  std::vector<char> in(static_cast<std::size_t>(p.codomain().vertex_count()),
                       0);
  for (Vertex l : codomain_set) in[static_cast<std::size_t>(l)] = 1;
  VertexSet out;
  for (Vertex v = 0; v < p.domain().vertex_count(); ++v) {
    if (in[static_cast<std::size_t>(p(v))]) out.push_back(v);
  }
  return out;
}

QuotientMap compose(const QuotientMap& outer, const QuotientMap& inner) {
  require(same_complex(inner.codomain_ptr(), outer.domain_ptr()),
          ErrorCode::ComplexMismatch,
          "inner codomain must match outer domain");
  std::vector<Vertex> assignment(
      static_cast<std::size_t>(inner.domain().vertex_count()));
  for (Vertex v = 0; v < inner.domain().vertex_count(); ++v) {
    assignment[static_cast<std::size_t>(v)] = outer(inner(v));
  }
  return QuotientMap(inner.domain_ptr(), outer.codomain_ptr(),
                     std::move(assignment));
}

LatticeFunction pull_back(const QuotientMap& p, const LatticeFunction& g) {
  require(same_complex(g.complex_ptr(), p.codomain_ptr()),
          ErrorCode::ComplexMismatch,
          "pullback needs a function on the codomain");
  std::vector<Cx> values(static_cast<std::size_t>(p.domain().vertex_count()));
  for (Vertex v = 0; v < p.domain().vertex_count(); ++v) {
    values[static_cast<std::size_t>(v)] = g[p(v)];
  }
  return LatticeFunction(p.domain_ptr(), std::move(values));
}

bool constant_on_fibers(const QuotientMap& p, const LatticeFunction& f) {
  require(same_complex(f.complex_ptr(), p.domain_ptr()),
          ErrorCode::ComplexMismatch,
          "fiber constancy needs a function on the domain");
  std::vector<Vertex> rep(static_cast<std::size_t>(p.codomain().vertex_count()),
                          -1);
  for (Vertex v = 0; v < p.domain().vertex_count(); ++v) {
    Vertex& r = rep[static_cast<std::size_t>(p(v))];
    if (r < 0) {
      r = v;
    } else if (f[v] != f[r]) {
      return false;
    }
  }
  return true;
}

QuotientMap quotient_by_partition(ComplexPtr domain, const Partition& part) {
  require(domain != nullptr, ErrorCode::InvalidArgument, "null complex");
  require(part.size() == domain->vertex_count(), ErrorCode::InvalidPartition,
          "partition size must match the vertex count");

  std::set<Edge> edges;
  for (const auto& [u, v] : domain->edges()) {
    const int a = part.class_of(u);
    const int b = part.class_of(v);
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }

  // A square descends when its four corner classes are distinct; its image
  // boundary then consists of pushed-forward edges, so it is a codomain
  // 4-cycle. Coinciding corners would need a degenerate cell, which the
  // model does not carry.
  std::set<Square> squares;
  for (const Square& s : domain->squares()) {
    Square img{part.class_of(s[0]), part.class_of(s[1]), part.class_of(s[2]),
               part.class_of(s[3])};
    bool distinct = true;
    for (int i = 0; i < 4 && distinct; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (img[i] == img[j]) {
          distinct = false;
          break;
        }
      }
    }
    if (distinct) squares.insert(canonical_square(img));
  }

  CellComplex codomain(part.class_count(),
                       std::vector<Edge>(edges.begin(), edges.end()),
                       std::vector<Square>(squares.begin(), squares.end()));
  std::vector<Vertex> assignment(part.labels().begin(), part.labels().end());
  return QuotientMap(domain, share(std::move(codomain)),
                     std::move(assignment));
}

bool is_monotone_fibers(const QuotientMap& p) {
  for (Vertex l = 0; l < p.codomain().vertex_count(); ++l) {
    if (!is_connected(p.domain(), fiber(p, l))) return false;
  }
  return true;
}

std::vector<VertexSet> enumerate_connected_subsets(const CellComplex& k) {
  const int n = k.vertex_count();
  std::vector<VertexSet> out;
  std::vector<char> in_cur(static_cast<std::size_t>(n), 0);
  std::vector<char> banned(static_cast<std::size_t>(n), 0);
  VertexSet cur;

  // Each connected set is produced exactly once, rooted at its minimum
  // vertex: extensions use vertices above the root, and siblings already
  // tried at this node are banned further down.
  std::function<void(Vertex)> grow = [&](Vertex root) {
    out.push_back(cur);
    VertexSet frontier;
    for (Vertex v : cur) {
      for (Vertex w : k.neighbors(v)) {
        if (w > root && !in_cur[static_cast<std::size_t>(w)] &&
            !banned[static_cast<std::size_t>(w)]) {
          frontier.push_back(w);
        }
      }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()),
                   frontier.end());
    for (Vertex w : frontier) {
      in_cur[static_cast<std::size_t>(w)] = 1;
      cur.insert(std::lower_bound(cur.begin(), cur.end(), w), w);
      grow(root);
      cur.erase(std::lower_bound(cur.begin(), cur.end(), w));
      in_cur[static_cast<std::size_t>(w)] = 0;
      banned[static_cast<std::size_t>(w)] = 1;
    }
    for (Vertex w : frontier) banned[static_cast<std::size_t>(w)] = 0;
  };

  for (Vertex r = 0; r < n; ++r) {
    cur = {r};
    in_cur[static_cast<std::size_t>(r)] = 1;
    grow(r);
    in_cur[static_cast<std::size_t>(r)] = 0;
  }
  return out;
}

VertexSet random_connected_subset(const CellComplex& k, Rng& rng) {
  const int n = k.vertex_count();
  const int target = static_cast<int>(rng.range(1, n));
  Vertex start = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  VertexSet cur{start};
  in[static_cast<std::size_t>(start)] = 1;
  VertexSet frontier;
  for (Vertex w : k.neighbors(start)) frontier.push_back(w);
  while (static_cast<int>(cur.size()) < target && !frontier.empty()) {
    const std::size_t i = rng.below(frontier.size());
    const Vertex w = frontier[i];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(i));
    if (in[static_cast<std::size_t>(w)]) continue;
    in[static_cast<std::size_t>(w)] = 1;
    cur.push_back(w);
    for (Vertex x : k.neighbors(w)) {
      if (!in[static_cast<std::size_t>(x)]) frontier.push_back(x);
    }
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

bool is_monotone_connected_preimages(const QuotientMap& p, PreimageMode mode,
                                     int samples, std::uint64_t seed) {
  const int n = p.codomain().vertex_count();
  if (mode == PreimageMode::Auto) {
    mode = n <= exhaustive_vertex_limit ? PreimageMode::Exhaustive
                                        : PreimageMode::Sampled;
  }
  auto connected_preimage = [&](const VertexSet& c) {
    return is_connected(p.domain(), preimage(p, c));
  };

  if (mode == PreimageMode::Exhaustive) {
    require(n <= exhaustive_vertex_limit,
            ErrorCode::CodomainTooLargeForExhaustive,
            "codomain has " + std::to_string(n) + " vertices, cap is " +
                std::to_string(exhaustive_vertex_limit));
    for (const VertexSet& c : enumerate_connected_subsets(p.codomain())) {
      if (!connected_preimage(c)) return false;
    }
    return true;
  }

  for (Vertex l = 0; l < n; ++l) {
    if (!connected_preimage({l})) return false;
  }
  for (const auto& [u, v] : p.codomain().edges()) {
    if (!connected_preimage({u, v})) return false;
  }
  Rng rng = Rng(seed).fork("connected-preimages");
  for (int i = 0; i < samples; ++i) {
    if (!connected_preimage(random_connected_subset(p.codomain(), rng))) {
      return false;
    }
  }
  return true;
}

bool is_monotone_algebraic(const QuotientMap& p, int samples,
                           std::uint64_t seed) {
  auto parts_fiber_constant = [&](const LatticeFunction& f) {
    for (const LatticeFunction& part : irr(f)) {
      if (!constant_on_fibers(p, part)) return false;
    }
    return true;
  };

  // Indicators of single fibers form a complete witness family: a
  // disconnected fiber splits its own indicator into parts that fail to be
  // fiber constant.
  for (Vertex l = 0; l < p.codomain().vertex_count(); ++l) {
    auto f = pull_back(p, LatticeFunction::indicator(p.codomain_ptr(), {l}));
    if (!parts_fiber_constant(f)) return false;
  }

  Rng rng = Rng(seed).fork("algebraic");
  for (int i = 0; i < samples; ++i) {
    std::vector<Cx> g(static_cast<std::size_t>(p.codomain().vertex_count()));
    for (auto& v : g) {
      if (rng.chance(0.3)) continue;  // keep some genuine zeros
      const double re = static_cast<double>(rng.range(-4, 4));
      const double im =
          rng.chance(0.5) ? static_cast<double>(rng.range(-4, 4)) : 0.0;
      v = Cx(re, im);
    }
    auto f = pull_back(p, LatticeFunction(p.codomain_ptr(), std::move(g)));
    if (!parts_fiber_constant(f)) return false;
  }
  return true;
}

Partition rc_partition(const QuotientMap& p) {
  std::vector<VertexSet> classes;
  for (Vertex l = 0; l < p.codomain().vertex_count(); ++l) {
    for (VertexSet& comp : connected_components(p.domain(), fiber(p, l))) {
      classes.push_back(std::move(comp));
    }
  }
  std::sort(classes.begin(), classes.end(),
            [](const VertexSet& a, const VertexSet& b) {
              return a.front() < b.front();
            });
  return Partition::from_classes(p.domain().vertex_count(), classes);
}

MonotoneHull monotone_hull(const QuotientMap& p) {
  QuotientMap q = quotient_by_partition(p.domain_ptr(), rc_partition(p));
  std::vector<Vertex> phat(
      static_cast<std::size_t>(q.codomain().vertex_count()), -1);
  for (Vertex v = 0; v < p.domain().vertex_count(); ++v) {
    phat[static_cast<std::size_t>(q(v))] = p(v);
  }
  QuotientMap down(q.codomain_ptr(), p.codomain_ptr(), std::move(phat));
  return MonotoneHull{std::move(q), std::move(down)};
}

}  // namespace mefkit
