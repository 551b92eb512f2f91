#pragma once

#include <complex>
#include <vector>

#include "mefkit/complex.hpp"
#include "mefkit/error.hpp"

namespace mefkit {

using Cx = std::complex<double>;

// Magnitudes <= eps count as zero. eps >= 0; 0 means exact comparison.
struct Tolerance {
  double eps = 0.0;
};

inline constexpr double grid_default_eps = 1e-9;

// Complex-valued function on the vertices of a complex.
class LatticeFunction {
 public:
  LatticeFunction(ComplexPtr complex, std::vector<Cx> values);

  static LatticeFunction zero(ComplexPtr complex);
  static LatticeFunction constant(ComplexPtr complex, Cx value);
  static LatticeFunction indicator(ComplexPtr complex, const VertexSet& s);

  const CellComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  const std::vector<Cx>& values() const { return values_; }
  Cx operator[](Vertex v) const {
    return values_[static_cast<std::size_t>(v)];
  }

  bool is_real(double tol = 0.0) const;
  double sup_norm() const;

 private:
  ComplexPtr complex_;
  std::vector<Cx> values_;
};

LatticeFunction operator+(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction operator-(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction operator*(Cx c, const LatticeFunction& f);

// Vertices where |f| > eps, sorted.
VertexSet support(const LatticeFunction& f, Tolerance tol = {});

// m must be a subset of the support (else NotASubset). True iff no edge of
// the complex joins m to the rest of the support, i.e. m is a union of
// components of the induced support subgraph.
bool is_clopen_in_support(const LatticeFunction& f, const VertexSet& m,
                          Tolerance tol = {});

// Zero functions are reducible by convention; otherwise irreducible iff the
// support induces a connected subgraph.
bool is_irreducible(const LatticeFunction& f, Tolerance tol = {});

// Restrictions of f to the connected components of its support, ordered by
// smallest support vertex. Empty for the zero function.
std::vector<LatticeFunction> irr(const LatticeFunction& f, Tolerance tol = {});

// Same pieces as irr; the name records the contract: parts are pairwise
// orthogonal, each irreducible, and they sum back to f exactly when eps = 0.
std::vector<LatticeFunction> irreducible_decomposition(const LatticeFunction& f,
                                                       Tolerance tol = {});

// True iff f(v) * g(v) == 0 at every vertex. Functions must live on the same
// complex (ComplexMismatch).
bool orthogonal(const LatticeFunction& f, const LatticeFunction& g);

// f restricted to s: values kept on s, zero elsewhere.
LatticeFunction restrict_to(const LatticeFunction& f, const VertexSet& s);

// Pointwise modulus; defined for every function.
LatticeFunction abs_value(const LatticeFunction& f);

// Order operations are only defined for real-valued functions and throw
// NotRealValued otherwise.
LatticeFunction sup(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction inf(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction positive_part(const LatticeFunction& f);

}  // namespace mefkit
