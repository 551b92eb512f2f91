#include "mefkit/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace mefkit {

namespace {

void check_same_complex(const LatticeFunction& f, const LatticeFunction& g) {
  require(same_complex(f.complex_ptr(), g.complex_ptr()),
          ErrorCode::ComplexMismatch,
          "functions live on different complexes");
}

void check_real(const LatticeFunction& f, const char* op) {
  require(f.is_real(), ErrorCode::NotRealValued,
          std::string(op) + " is defined for real-valued functions only");
}

}  // namespace

LatticeFunction::LatticeFunction(ComplexPtr complex, std::vector<Cx> values)
    : complex_(std::move(complex)), values_(std::move(values)) {
  require(complex_ != nullptr, ErrorCode::InvalidArgument,
          "function needs a complex");
  require(values_.size() ==
              static_cast<std::size_t>(complex_->vertex_count()),
          ErrorCode::InvalidArgument,
          "one value per vertex required");
}

LatticeFunction LatticeFunction::zero(ComplexPtr complex) {
  std::vector<Cx> v(static_cast<std::size_t>(complex->vertex_count()));
  return LatticeFunction(std::move(complex), std::move(v));
}

LatticeFunction LatticeFunction::constant(ComplexPtr complex, Cx value) {
  std::vector<Cx> v(static_cast<std::size_t>(complex->vertex_count()), value);
  return LatticeFunction(std::move(complex), std::move(v));
}

LatticeFunction LatticeFunction::indicator(ComplexPtr complex,
                                           const VertexSet& s) {
  require(is_vertex_set(*complex, s), ErrorCode::InvalidArgument,
          "indicator requires a valid vertex set");
  std::vector<Cx> v(static_cast<std::size_t>(complex->vertex_count()));
  for (Vertex x : s) v[static_cast<std::size_t>(x)] = Cx(1.0, 0.0);
  return LatticeFunction(std::move(complex), std::move(v));
}

bool LatticeFunction::is_real(double tol) const {
  for (const Cx& v : values_) {
    if (std::abs(v.imag()) > tol) return false;
  }
  return true;
}

double LatticeFunction::sup_norm() const {
  double m = 0.0;
  for (const Cx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

LatticeFunction operator+(const LatticeFunction& f, const LatticeFunction& g) {
  check_same_complex(f, g);
  std::vector<Cx> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values()[i] + g.values()[i];
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

LatticeFunction operator-(const LatticeFunction& f, const LatticeFunction& g) {
  check_same_complex(f, g);
  std::vector<Cx> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values()[i] - g.values()[i];
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

LatticeFunction operator*(Cx c, const LatticeFunction& f) {
  std::vector<Cx> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * f.values()[i];
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

VertexSet support(const LatticeFunction& f, Tolerance tol) {
  require(tol.eps >= 0.0, ErrorCode::InvalidArgument, "eps must be >= 0");
  VertexSet s;
  for (Vertex v = 0; v < f.complex().vertex_count(); ++v) {
    if (std::abs(f[v]) > tol.eps) s.push_back(v);
  }
  return s;
}

bool is_clopen_in_support(const LatticeFunction& f, const VertexSet& m,
                          Tolerance tol) {
  require(is_vertex_set(f.complex(), m), ErrorCode::InvalidArgument,
          "m must be a valid vertex set");
  const VertexSet supp = support(f, tol);
  require(std::includes(supp.begin(), supp.end(), m.begin(), m.end()),
          ErrorCode::NotASubset, "m must be contained in the support");

  std::vector<char> in_m(static_cast<std::size_t>(f.complex().vertex_count()));
  std::vector<char> in_supp(in_m.size());
  for (Vertex v : m) in_m[static_cast<std::size_t>(v)] = 1;
  for (Vertex v : supp) in_supp[static_cast<std::size_t>(v)] = 1;
  // Clopen in the support subgraph means no edge crosses from m into the
  // rest of the support.
  for (const auto& [u, v] : f.complex().edges()) {
    const bool mu = in_m[static_cast<std::size_t>(u)];
    const bool mv = in_m[static_cast<std::size_t>(v)];
    if (mu == mv) continue;
    const Vertex outside = mu ? v : u;
    if (in_supp[static_cast<std::size_t>(outside)]) return false;
  }
  return true;
}

bool is_irreducible(const LatticeFunction& f, Tolerance tol) {
  const VertexSet supp = support(f, tol);
  if (supp.empty()) return false;
  return connected_components(f.complex(), supp).size() == 1;
}

std::vector<LatticeFunction> irr(const LatticeFunction& f, Tolerance tol) {
  const VertexSet supp = support(f, tol);
  std::vector<LatticeFunction> parts;
  for (const VertexSet& comp : connected_components(f.complex(), supp)) {
    parts.push_back(restrict_to(f, comp));
  }
  return parts;
}

std::vector<LatticeFunction> irreducible_decomposition(
    const LatticeFunction& f, Tolerance tol) {
  return irr(f, tol);
}

bool orthogonal(const LatticeFunction& f, const LatticeFunction& g) {
  check_same_complex(f, g);
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (f.values()[i] * g.values()[i] != Cx(0.0, 0.0)) return false;
  }
  return true;
}

LatticeFunction restrict_to(const LatticeFunction& f, const VertexSet& s) {
  require(is_vertex_set(f.complex(), s), ErrorCode::InvalidArgument,
          "restriction set must be a valid vertex set");
  std::vector<Cx> v(f.values().size());
  for (Vertex x : s) {
    v[static_cast<std::size_t>(x)] = f[x];
  }
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

LatticeFunction abs_value(const LatticeFunction& f) {
  std::vector<Cx> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = Cx(std::abs(f.values()[i]), 0.0);
  }
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

LatticeFunction sup(const LatticeFunction& f, const LatticeFunction& g) {
  check_same_complex(f, g);
  check_real(f, "sup");
  check_real(g, "sup");
  std::vector<Cx> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = Cx(std::max(f.values()[i].real(), g.values()[i].real()), 0.0);
  }
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

LatticeFunction inf(const LatticeFunction& f, const LatticeFunction& g) {
  check_same_complex(f, g);
  check_real(f, "inf");
  check_real(g, "inf");
  std::vector<Cx> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = Cx(std::min(f.values()[i].real(), g.values()[i].real()), 0.0);
  }
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

LatticeFunction positive_part(const LatticeFunction& f) {
  check_real(f, "positive part");
  std::vector<Cx> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = Cx(std::max(f.values()[i].real(), 0.0), 0.0);
  }
  return LatticeFunction(f.complex_ptr(), std::move(v));
}

}  // namespace mefkit
