#include <numeric>
#include <vector>

#include "doctest.h"
#include "mefkit/abelian.hpp"
#include "mefkit/rng.hpp"

using namespace mefkit;

namespace {

IntMatrix random_matrix(Rng& rng, std::size_t max_dim, long long magnitude) {
  const std::size_t r = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_dim)));
  const std::size_t c = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_dim)));
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      m.at(i, j) = rng.range(-magnitude, magnitude);
    }
  }
  return m;
}

// Cofactor-expansion determinant, independent of the library's elimination.
Int cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m.at(0, 0);
  Int acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    const Int term = m.at(0, j) * cofactor_det(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

void minor_subsets(std::size_t n, std::size_t k, std::size_t start,
                   std::vector<std::size_t>& pick,
                   std::vector<std::vector<std::size_t>>& out) {
  if (pick.size() == k) {
    out.push_back(pick);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    pick.push_back(i);
    minor_subsets(n, k, i + 1, pick, out);
    pick.pop_back();
  }
}

// d_k = gcd of all k x k minors; the k-th invariant factor is d_k / d_{k-1}.
std::vector<Int> invariant_factors_by_minors(const IntMatrix& m) {
  const std::size_t bound = std::min(m.rows(), m.cols());
  std::vector<Int> d(bound + 1, 0);
  d[0] = 1;
  std::vector<Int> factors;
  for (std::size_t k = 1; k <= bound; ++k) {
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    std::vector<std::size_t> pick;
    minor_subsets(m.rows(), k, 0, pick, row_sets);
    minor_subsets(m.cols(), k, 0, pick, col_sets);
    Int g = 0;
    for (const auto& rs : row_sets) {
      for (const auto& cs : col_sets) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            sub.at(i, j) = m.at(rs[i], cs[j]);
          }
        }
        g = gcd(g, cofactor_det(sub));
      }
    }
    g = abs(g);
    d[k] = g;
    if (g == 0) break;
    factors.push_back(d[k] / d[k - 1]);
  }
  return factors;
}

}  // namespace

TEST_CASE("smith normal form matches the minor-gcd invariants") {
  Rng rng(11);
  for (int round = 0; round < 150; ++round) {
    const IntMatrix m = random_matrix(rng, 4, 9);
    const SmithDecomposition s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    const auto want = invariant_factors_by_minors(m);
    REQUIRE(s.rank == want.size());
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(diag[i] == want[i]);
    for (std::size_t i = want.size(); i < diag.size(); ++i) CHECK(diag[i] == 0);
  }
}

TEST_CASE("smith transforms are unimodular and v_inv inverts v") {
  Rng rng(12);
  for (int round = 0; round < 100; ++round) {
    const IntMatrix m = random_matrix(rng, 5, 20);
    const SmithDecomposition s = smith_normal_form(m);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(s.v * s.v_inv == IntMatrix::identity(s.v.rows()));
    CHECK(s.v_inv * s.v == IntMatrix::identity(s.v.rows()));
  }
}

TEST_CASE("determinant and rank match cofactor oracles") {
  Rng rng(13);
  for (int round = 0; round < 150; ++round) {
    const IntMatrix m = random_matrix(rng, 4, 9);
    if (m.rows() == m.cols()) CHECK(determinant(m) == cofactor_det(m));
    // Largest k with a nonzero k x k minor.
    std::size_t want_rank = invariant_factors_by_minors(m).size();
    CHECK(rank_q(m) == want_rank);
  }
}

TEST_CASE("empty and zero matrices") {
  const IntMatrix z(2, 3);
  const SmithDecomposition s = smith_normal_form(z);
  CHECK(s.rank == 0);
  CHECK(s.u * z * s.v == s.d);
  CHECK(rank_q(z) == 0);
  CHECK(smith_normal_form(IntMatrix{}).rank == 0);
}

TEST_CASE("lattice rank and membership") {
  const LatticeBasis two_d =
      lattice_rank(std::vector<std::vector<long long>>{{2, 0}, {0, 2}, {1, 1}});
  CHECK(two_d.rank == 2);
  CHECK(in_row_lattice(two_d.basis, {Int(2), Int(0)}));
  CHECK(in_row_lattice(two_d.basis, {Int(1), Int(1)}));
  CHECK(in_row_lattice(two_d.basis, {Int(3), Int(1)}));
  CHECK_FALSE(in_row_lattice(two_d.basis, {Int(1), Int(0)}));

  const LatticeBasis gcd_line =
      lattice_rank(std::vector<std::vector<long long>>{{6}, {10}});
  REQUIRE(gcd_line.rank == 1);
  CHECK(gcd_line.basis.at(0, 0) == 2);

  const LatticeBasis empty = lattice_rank(std::vector<std::vector<long long>>{{0, 0}});
  CHECK(empty.rank == 0);

  // First nonzero entry of each basis row is positive.
  const LatticeBasis mixed = lattice_rank(
      std::vector<std::vector<long long>>{{-3, 1, 0}, {0, -2, 4}});
  for (std::size_t i = 0; i < mixed.rank; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const Int& e = mixed.basis.at(i, j);
      if (e != 0) {
        CHECK(e > 0);
        break;
      }
    }
  }
  CHECK_THROWS_AS(
      lattice_rank(std::vector<std::vector<long long>>{{1, 2}, {1}}), Error);
}

TEST_CASE("membership in random row lattices") {
  Rng rng(14);
  for (int round = 0; round < 100; ++round) {
    const IntMatrix m = random_matrix(rng, 4, 6);
    const LatticeBasis lb = lattice_rank(m);
    // Every generating row lies in the computed basis span.
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::vector<Int> row(m.cols());
      for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
      CHECK(in_row_lattice(lb.basis, row));
    }
    // Random integer combinations of basis rows lie in the span.
    if (lb.rank > 0) {
      std::vector<Int> combo(m.cols(), 0);
      for (std::size_t i = 0; i < lb.rank; ++i) {
        const long long c = rng.range(-3, 3);
        for (std::size_t j = 0; j < m.cols(); ++j) {
          combo[j] += c * lb.basis.at(i, j);
        }
      }
      CHECK(in_row_lattice(lb.basis, combo));
    }
  }
}

TEST_CASE("quotient invariants") {
  CHECK(quotient_invariants(
            2, IntMatrix::from_rows({{2, 0}, {0, 4}})) ==
        std::vector<long long>{2, 4});
  CHECK(quotient_invariants(2, IntMatrix::from_rows({{1, 1}, {1, -1}})) ==
        std::vector<long long>{2});
  CHECK(quotient_invariants(1, IntMatrix::from_rows({{1}})).empty());
  CHECK_THROWS_AS(quotient_invariants(2, IntMatrix::from_rows({{1, 1}})),
                  Error);
}

TEST_CASE("finite abelian groups validate invariant factor form") {
  CHECK(FiniteAbelian({2, 4}).order() == 8);
  CHECK(FiniteAbelian{}.trivial());
  CHECK(FiniteAbelian({2, 4}).to_string() == "Z/2 x Z/4");
  CHECK(FiniteAbelian{}.to_string() == "0");
  CHECK_THROWS_AS(FiniteAbelian({1}), Error);
  CHECK_THROWS_AS(FiniteAbelian({4, 2}), Error);
  CHECK_THROWS_AS(FiniteAbelian({2, 3}), Error);
}

TEST_CASE("finite homs validate generator images") {
  const FiniteAbelian z4({4});
  const FiniteAbelian z2({2});
  const FiniteHom h(z4, z2, {{1}});
  CHECK(h.apply({2}) == std::vector<long long>{0});
  CHECK(h.apply({3}) == std::vector<long long>{1});
  // Order of the image must divide the generator's order.
  CHECK_THROWS_AS(FiniteHom(z2, z4, {{1}}), Error);
  CHECK_THROWS_AS(FiniteHom(z4, z2, {{1}, {1}}), Error);
}

TEST_CASE("torus hom classification") {
  const auto diag = classify_torus_hom(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(diag.surjective);
  CHECK(diag.kernel_finite);
  REQUIRE(diag.kernel_order.has_value());
  CHECK(*diag.kernel_order == 6);
  CHECK(diag.image_torus_dim == 2);
  CHECK(diag.image_finite_part.trivial());

  const auto proj = classify_torus_hom(IntMatrix::from_rows({{1, 1}}));
  CHECK(proj.surjective);
  CHECK_FALSE(proj.kernel_finite);
  CHECK_FALSE(proj.kernel_order.has_value());
  CHECK(proj.image_torus_dim == 1);

  const auto zero = classify_torus_hom(IntMatrix::from_rows({{0}}));
  CHECK_FALSE(zero.surjective);
  CHECK_FALSE(zero.kernel_finite);
  CHECK(zero.image_torus_dim == 0);

  const auto doubling = classify_torus_hom(IntMatrix::from_rows({{2}}));
  CHECK(doubling.surjective);
  CHECK(doubling.kernel_finite);
  CHECK(*doubling.kernel_order == 2);
}

TEST_CASE("kernel order equals torsion point count") {
  Rng rng(15);
  int rounds = 0;
  while (rounds < 40) {
    const std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.range(-4, 4);
    }
    const Int det = cofactor_det(m);
    if (det == 0 || abs(det) > 40) continue;
    ++rounds;
    const auto cls = classify_torus_hom(m);
    REQUIRE(cls.kernel_finite);
    // Kernel points have coordinates in (1/q)Z by Cramer; enumerate them.
    const long long q = abs(det).convert_to<long long>();
    long long hits = 0;
    std::vector<long long> a(n, 0);
    while (true) {
      bool in_kernel = true;
      for (std::size_t i = 0; i < n && in_kernel; ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
          acc += m.at(i, j).convert_to<long long>() * a[j];
        }
        if (((acc % q) + q) % q != 0) in_kernel = false;
      }
      if (in_kernel) ++hits;
      std::size_t pos = 0;
      while (pos < n && ++a[pos] == q) a[pos++] = 0;
      if (pos == n) break;
    }
    CHECK(*cls.kernel_order == hits);
  }
}

TEST_CASE("product hom classification") {
  const FiniteHom finite(FiniteAbelian({4}), FiniteAbelian({2}), {{1}});
  const auto cls = classify_product_hom(finite, IntMatrix::from_rows({{2}}));
  CHECK(cls.surjective);
  CHECK(cls.kernel_finite);
  CHECK(*cls.kernel_order == 4);
  CHECK(cls.image_torus_dim == 1);
  CHECK(cls.image_finite_part == FiniteAbelian({2}));

  const FiniteHom big(FiniteAbelian({10007}), FiniteAbelian({10007}), {{1}});
  CHECK_THROWS_AS(classify_product_hom(big, IntMatrix::from_rows({{1}})),
                  Error);
}
