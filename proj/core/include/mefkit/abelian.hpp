#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mefkit/error.hpp"

namespace mefkit {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix with arbitrary-precision entries. Row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[a] += c * row[b]
  void add_row(std::size_t a, std::size_t b, const Int& c);
  // col[a] += c * col[b]
  void add_col(std::size_t a, std::size_t b, const Int& c);
  void negate_row(std::size_t a);
  void negate_col(std::size_t a);

  IntMatrix transposed() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// Rank over the rationals, computed exactly (fraction-free elimination).
std::size_t rank_q(IntMatrix m);

// Determinant of a square matrix, exact.
Int determinant(IntMatrix m);

// u * m * v = d with u, v unimodular and d diagonal, d[i] >= 0,
// d[i] divides d[i+1]. v_inv accumulates the inverse of v so callers can read
// lattice bases straight off d * v_inv.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix v_inv;
  std::size_t rank = 0;

  std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

// Span of the given row vectors inside Z^n: rank plus an integer basis
// (rows of `basis`, exactly `rank` of them) of the sublattice they generate.
struct LatticeBasis {
  std::size_t rank = 0;
  IntMatrix basis;
};

LatticeBasis lattice_rank(const IntMatrix& row_vectors);
// Convenience overload; rejects ragged input with DimensionMismatch.
LatticeBasis lattice_rank(const std::vector<std::vector<long long>>& vectors);

// True iff k lies in the sublattice spanned by the rows of `row_vectors`.
bool in_row_lattice(const IntMatrix& row_vectors, const std::vector<Int>& k);

// Finite abelian group in invariant-factor form: orders d1 | d2 | ... | dk,
// every order >= 2. The trivial group is the empty list.
class FiniteAbelian {
 public:
  FiniteAbelian() = default;
  explicit FiniteAbelian(std::vector<long long> orders);

  const std::vector<long long>& orders() const { return orders_; }
  Int order() const;
  bool trivial() const { return orders_.empty(); }
  std::size_t generator_count() const { return orders_.size(); }

  bool operator==(const FiniteAbelian&) const = default;
  std::string to_string() const;

 private:
  std::vector<long long> orders_;
};

// Map between finite abelian groups given by images of the canonical
// generators. Validated on construction: order(image of g_i) divides d_i.
class FiniteHom {
 public:
  FiniteHom(FiniteAbelian domain, FiniteAbelian codomain,
            std::vector<std::vector<long long>> generator_images);

  const FiniteAbelian& domain() const { return domain_; }
  const FiniteAbelian& codomain() const { return codomain_; }
  const std::vector<std::vector<long long>>& generator_images() const {
    return images_;
  }

  std::vector<long long> apply(const std::vector<long long>& element) const;

 private:
  FiniteAbelian domain_;
  FiniteAbelian codomain_;
  std::vector<std::vector<long long>> images_;
};

struct HomClassification {
  bool surjective = false;
  bool kernel_finite = false;
  // Engaged iff kernel_finite.
  std::optional<Int> kernel_order;
  std::size_t image_torus_dim = 0;
  FiniteAbelian image_finite_part;
};

// Hom of tori induced by the integer matrix m (n x m matrix: maps the
// m-torus to the n-torus, x -> m x mod 1).
HomClassification classify_torus_hom(const IntMatrix& m);

// Hom of F x T^m into F' x T^n acting blockwise: `finite` on the finite
// factor, `m` on the torus factor. Enumerates the finite factor, so both
// group orders must stay <= max_enumeration.
HomClassification classify_product_hom(const FiniteHom& finite,
                                       const IntMatrix& m,
                                       long long max_enumeration = 10000);

// Invariant factors (>= 2 only) of Z^g / L where L is spanned by the rows of
// `relations` together with nothing else; infinite quotients are rejected.
std::vector<long long> quotient_invariants(std::size_t g,
                                           const IntMatrix& relations);

}  // namespace mefkit
