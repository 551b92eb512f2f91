#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "mefkit/complex.hpp"
#include "mefkit/error.hpp"
#include "mefkit/lattice.hpp"
#include "mefkit/rng.hpp"

using namespace mefkit;

namespace {

LatticeFunction random_function(const ComplexPtr& k, Rng& rng) {
  std::vector<Cx> values(static_cast<std::size_t>(k->vertex_count()));
  for (auto& v : values) {
    if (rng.chance(0.4)) continue;
    v = Cx{rng.unit() * 4.0 - 2.0, rng.chance(0.5) ? rng.unit() - 0.5 : 0.0};
  }
  return LatticeFunction(k, std::move(values));
}

void set_partitions(int n, std::vector<int>& labels, int used,
                    const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(labels.size()) == n) {
    fn(labels);
    return;
  }
  for (int c = 0; c <= used; ++c) {
    labels.push_back(c);
    set_partitions(n, labels, used + (c == used ? 1 : 0), fn);
    labels.pop_back();
  }
}

}  // namespace

TEST_CASE("support and irreducibility basics") {
  const ComplexPtr c8 = share(cycle_complex(8));
  std::vector<Cx> values(8);
  values[1] = Cx{0.5, 0.0};
  values[2] = Cx{0.0, -2.0};
  values[6] = Cx{1e-12, 0.0};
  const LatticeFunction f(c8, values);

  CHECK(support(f) == VertexSet{1, 2, 6});
  CHECK(support(f, Tolerance{1e-9}) == VertexSet{1, 2});
  CHECK_FALSE(is_irreducible(f));
  CHECK(is_irreducible(f, Tolerance{1e-9}));
  CHECK_FALSE(is_irreducible(LatticeFunction::zero(c8)));

  CHECK(is_clopen_in_support(f, VertexSet{6}));
  CHECK(is_clopen_in_support(f, VertexSet{1, 2}));
  CHECK_FALSE(is_clopen_in_support(f, VertexSet{1}));
  CHECK_THROWS_AS(is_clopen_in_support(f, VertexSet{0}), Error);
}

TEST_CASE("decomposition parts are component restrictions") {
  Rng rng(21);
  for (int round = 0; round < 300; ++round) {
    const ComplexPtr k = share(cycle_complex(static_cast<int>(rng.range(3, 12))));
    const LatticeFunction f = random_function(k, rng);
    const auto parts = irreducible_decomposition(f);
    const auto comps = connected_components(*k, support(f));
    REQUIRE(parts.size() == comps.size());
    LatticeFunction sum = LatticeFunction::zero(k);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      CHECK(support(parts[i]) == comps[i]);
      // Oracle: the part is exactly f masked to its component.
      const LatticeFunction masked = restrict_to(f, comps[i]);
      CHECK(parts[i].values() == masked.values());
      CHECK(is_irreducible(parts[i]));
      sum = sum + parts[i];
    }
    CHECK(sum.values() == f.values());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        CHECK(orthogonal(parts[i], parts[j]));
      }
    }
  }
}

TEST_CASE("irr and irreducible_decomposition agree") {
  Rng rng(22);
  const ComplexPtr k = share(wedge_circles(2, 4));
  for (int round = 0; round < 50; ++round) {
    const LatticeFunction f = random_function(k, rng);
    const auto a = irr(f);
    const auto b = irreducible_decomposition(f);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].values() == b[i].values());
    }
  }
}

TEST_CASE("only the all-singleton grouping of parts stays irreducible") {
  // Uniqueness over every way of regrouping the parts: merging any two
  // distinct components produces a reducible summand.
  const ComplexPtr c6 = share(cycle_complex(6));
  std::vector<Cx> values(6);
  values[0] = Cx{1.0, 0.0};
  values[2] = Cx{0.0, 1.0};
  values[4] = Cx{-2.0, 0.5};
  const LatticeFunction f(c6, values);
  const auto parts = irreducible_decomposition(f);
  REQUIRE(parts.size() == 3);

  std::vector<int> labels;
  int groupings = 0;
  int valid = 0;
  set_partitions(3, labels, 0, [&](const std::vector<int>& assign) {
    ++groupings;
    int blocks = 0;
    for (int c : assign) blocks = std::max(blocks, c + 1);
    bool all_irreducible = true;
    for (int b = 0; b < blocks; ++b) {
      LatticeFunction block = LatticeFunction::zero(c6);
      for (int i = 0; i < 3; ++i) {
        if (assign[static_cast<std::size_t>(i)] == b) {
          block = block + parts[static_cast<std::size_t>(i)];
        }
      }
      if (!is_irreducible(block)) all_irreducible = false;
    }
    if (all_irreducible) {
      ++valid;
      CHECK(blocks == 3);
    }
  });
  CHECK(groupings == 5);  // Bell(3)
  CHECK(valid == 1);
}

TEST_CASE("order operations on real functions") {
  const ComplexPtr c4 = share(cycle_complex(4));
  const LatticeFunction f(c4, {Cx{1, 0}, Cx{-2, 0}, Cx{0, 0}, Cx{3, 0}});
  const LatticeFunction g(c4, {Cx{0, 0}, Cx{1, 0}, Cx{-1, 0}, Cx{5, 0}});

  const LatticeFunction hi = sup(f, g);
  const LatticeFunction lo = inf(f, g);
  CHECK(hi.values() == std::vector<Cx>{{1, 0}, {1, 0}, {0, 0}, {5, 0}});
  CHECK(lo.values() == std::vector<Cx>{{0, 0}, {-2, 0}, {-1, 0}, {3, 0}});
  CHECK(positive_part(f).values() ==
        std::vector<Cx>{{1, 0}, {0, 0}, {0, 0}, {3, 0}});
  CHECK(abs_value(f).values() ==
        std::vector<Cx>{{1, 0}, {2, 0}, {0, 0}, {3, 0}});

  const LatticeFunction cx(c4, {Cx{0, 1}, Cx{0, 0}, Cx{0, 0}, Cx{0, 0}});
  CHECK_THROWS_AS(sup(f, cx), Error);
  CHECK(abs_value(cx)[0] == Cx{1, 0});

  // Lattice identity: f + g = sup + inf for real functions.
  const LatticeFunction lhs = f + g;
  const LatticeFunction rhs = hi + lo;
  CHECK(lhs.values() == rhs.values());
}

TEST_CASE("function arithmetic requires matching complexes") {
  const ComplexPtr a = share(cycle_complex(4));
  const ComplexPtr b = share(cycle_complex(5));
  CHECK_THROWS_AS(LatticeFunction::zero(a) + LatticeFunction::zero(b), Error);
  CHECK_THROWS_AS(orthogonal(LatticeFunction::zero(a), LatticeFunction::zero(b)),
                  Error);
}

TEST_CASE("indicator and constant builders") {
  const ComplexPtr c5 = share(cycle_complex(5));
  const LatticeFunction ind = LatticeFunction::indicator(c5, {1, 3});
  CHECK(support(ind) == VertexSet{1, 3});
  CHECK(ind[1] == Cx{1, 0});
  const LatticeFunction c = LatticeFunction::constant(c5, Cx{2, 1});
  CHECK(c.sup_norm() == doctest::Approx(std::sqrt(5.0)));
  CHECK(is_irreducible(c));
}
