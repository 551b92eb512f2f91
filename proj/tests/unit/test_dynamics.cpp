#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mefkit/dynamics.hpp"
#include "mefkit/error.hpp"
#include "mefkit/fixtures.hpp"
#include "mefkit/spectral.hpp"

using namespace mefkit;

namespace {

TorusSystem rotation_1d(const std::string& a, int grid = 256) {
  IntMatrix m(1, 1);
  m.at(0, 0) = 1;
  return TorusSystem(1, m, {RotationEntry::parse(a)}, {Warp::identity()}, grid);
}

}  // namespace

TEST_CASE("rotation entry parsing") {
  const RotationEntry half = RotationEntry::parse("1/2");
  CHECK(half.exact == Rational(1, 2));
  CHECK_FALSE(half.from_decimal);

  const RotationEntry neg = RotationEntry::parse("-3/4");
  CHECK(neg.exact == Rational(-3, 4));

  const RotationEntry dec = RotationEntry::parse("0.6180339887");
  CHECK(dec.from_decimal);
  CHECK(dec.digits == 10);
  CHECK(dec.exact == Rational(6180339887LL, 10000000000LL));

  // Fractional digits with leading zeros must survive.
  const RotationEntry small = RotationEntry::parse("0.0098");
  CHECK(small.exact == Rational(98, 10000));
  CHECK(small.digits == 4);

  const RotationEntry whole = RotationEntry::parse("3");
  CHECK(whole.exact == Rational(3));
  CHECK_FALSE(whole.from_decimal);

  CHECK(RotationEntry::parse("-0.25").exact == Rational(-1, 4));
  CHECK(RotationEntry::parse(" 1/3 ").exact == Rational(1, 3));

  CHECK_THROWS_AS(RotationEntry::parse("1/0"), Error);
  CHECK_THROWS_AS(RotationEntry::parse("abc"), Error);
  CHECK_THROWS_AS(RotationEntry::parse("1.2.3"), Error);
  CHECK_THROWS_AS(RotationEntry::parse(""), Error);
}

TEST_CASE("deemed-rational rule") {
  // Exact fractions are always rational.
  CHECK(effective_rational(RotationEntry::parse("1/3")) == Rational(1, 3));
  // Short terminating decimals are recognized.
  CHECK(effective_rational(RotationEntry::parse("0.25")) == Rational(1, 4));
  CHECK(effective_rational(RotationEntry::parse("0.333333")) == Rational(1, 3));
  // Ten golden-ratio digits admit no small-denominator convergent that is
  // this close, so the entry stays irrational.
  CHECK_FALSE(effective_rational(RotationEntry::parse("0.6180339887")));
  CHECK_FALSE(effective_rational(RotationEntry::parse("0.4142135624")));

  CHECK(effective_rational(0.25, 1000000).has_value());
  CHECK(*effective_rational(0.25, 1000000) == Rational(1, 4));
  CHECK_FALSE(effective_rational(0.6180339887498949, 1000000).has_value());
  // Denominator cap is honored.
  CHECK_FALSE(effective_rational(1.0 / 3.0, 2).has_value());
}

TEST_CASE("warps are validated bijections of the half-open interval") {
  CHECK(Warp::identity().apply(0.3) == doctest::Approx(0.3));
  CHECK(Warp::square().apply(0.5) == doctest::Approx(0.25));
  CHECK(Warp::square().apply(0.0) == doctest::Approx(0.0));

  const Warp table = Warp::user_table({0.0, 0.4, 0.7});
  CHECK(table.apply(0.0) == doctest::Approx(0.0));
  // Piecewise-linear through the samples; last segment closes to 1.
  CHECK(table.apply(1.0 / 3.0) == doctest::Approx(0.4));
  CHECK(table.apply(0.5) == doctest::Approx(0.55));
  CHECK(table.apply(5.0 / 6.0) == doctest::Approx(0.85));

  CHECK_THROWS_AS(Warp::user_table({0.1, 0.4}), Error);
  CHECK_THROWS_AS(Warp::user_table({0.0, 0.6, 0.5}), Error);
  CHECK_THROWS_AS(Warp::user_table({0.0, 0.5, 1.0}), Error);
  CHECK_THROWS_AS(Warp::user_table({0.0}), Error);
}

TEST_CASE("system construction guards") {
  IntMatrix one(1, 1);
  one.at(0, 0) = 1;
  CHECK_THROWS_AS(TorusSystem(1, one, {RotationEntry::parse("0")},
                              {Warp::identity()}, 4),
                  Error);
  IntMatrix wrong(2, 1);
  CHECK_THROWS_AS(TorusSystem(1, wrong, {RotationEntry::parse("0")},
                              {Warp::identity()}, 16),
                  Error);
  CHECK_THROWS_AS(TorusSystem(1, one, {}, {Warp::identity()}, 16), Error);
  CHECK_THROWS_AS(TorusSystem(1, one, {RotationEntry::parse("0")}, {}, 16),
                  Error);

  const TorusSystem rot = rotation_1d("1/4");
  CHECK(rot.affine());
  CHECK(rot.pure_rotation());
  CHECK(rot.invertible());

  CHECK(fixture_doubling_system().affine());
  CHECK_FALSE(fixture_doubling_system().invertible());
  CHECK_FALSE(fixture_warped_product().affine());
  CHECK(fixture_warped_product().invertible());
}

TEST_CASE("apply matches apply_exact on affine systems") {
  const TorusSystem sys = fixture_doubling_system();
  std::vector<Rational> x{Rational(3, 7)};
  std::vector<double> xd{3.0 / 7.0};
  for (int i = 0; i < 20; ++i) {
    x = sys.apply_exact(x);
    xd = sys.apply(xd);
  }
  // 20 doublings stay well inside double precision for denominator 7.
  CHECK(std::abs(x[0].convert_to<double>() - xd[0]) < 1e-9);
  CHECK(x[0] >= 0);
  CHECK(x[0] < 1);

  CHECK_THROWS_AS(fixture_warped_product().apply_exact(
                      {Rational(1, 3), Rational(1, 3)}),
                  Error);
}

TEST_CASE("grid offsets and coordinates are inverse") {
  const int dim = 3, grid = 5;
  std::vector<int> coords(dim);
  for (std::size_t off = 0; off < grid_point_count(dim, grid); ++off) {
    grid_coords(dim, grid, off, coords);
    CHECK(grid_offset(dim, grid, coords) == off);
  }
  CHECK(grid_point_count(2, 16) == 256);
}

TEST_CASE("interpolation is exact at grid points and periodic") {
  GridFunction f{2, 8, {}};
  f.values.resize(64);
  for (std::size_t i = 0; i < 64; ++i) {
    f.values[i] = Cx{static_cast<double>(i), -0.5 * static_cast<double>(i)};
  }
  std::vector<int> coords(2);
  for (std::size_t off = 0; off < 64; ++off) {
    grid_coords(2, 8, off, coords);
    const std::vector<double> x{coords[0] / 8.0, coords[1] / 8.0};
    CHECK(std::abs(interpolate(f, x) - f.values[off]) < 1e-12);
  }
  // Midpoint between wrap-around neighbors on axis 0.
  const GridFunction g{1, 4, {Cx{0, 0}, Cx{1, 0}, Cx{2, 0}, Cx{7, 0}}};
  const std::vector<double> mid{0.875};
  CHECK(interpolate(g, mid).real() == doctest::Approx(3.5));
}

TEST_CASE("finite actions must be automorphisms") {
  const ComplexPtr c8 = fixture_c8();
  std::vector<Vertex> shift{1, 2, 3, 4, 5, 6, 7, 0};
  const FiniteAction act(c8, {shift});
  CHECK(orbit_partition(act).class_count() == 1);
  CHECK(is_invariant_constant(act));

  std::vector<Vertex> antipodal{4, 5, 6, 7, 0, 1, 2, 3};
  CHECK(orbit_partition(FiniteAction(c8, {antipodal})).class_count() == 4);

  CHECK_THROWS_AS(FiniteAction(c8, {{0, 0, 1, 2, 3, 4, 5, 6}}), Error);
  CHECK_THROWS_AS(FiniteAction(c8, {{1, 0, 3, 2, 5, 4, 7, 6}}), Error);

  const FiniteAction trivial(c8, {{0, 1, 2, 3, 4, 5, 6, 7}});
  CHECK(orbit_partition(trivial).class_count() == 8);
  const QuotientMap mtf = maximal_trivial_factor(trivial);
  CHECK(mtf.codomain().vertex_count() == 8);
  CHECK(maximal_trivial_factor(act).codomain().vertex_count() == 1);
}

TEST_CASE("equivariant hull descends fiber-permuting generators") {
  const ComplexPtr c8 = fixture_c8();
  const std::vector<Vertex> antipodal{4, 5, 6, 7, 0, 1, 2, 3};
  const FiniteAction act(c8, {antipodal});

  // Doubling fibers {v, v+4} are swapped by the antipodal map.
  const EquivariantHull eh =
      equivariant_monotone_hull(act, fixture_doubling_c8());
  CHECK(eh.hull.q.codomain().vertex_count() == 8);
  CHECK(eh.descended.generators().front() == antipodal);

  // Arc-collapse fiber {0, 1} maps to {4, 5}, which is not a fiber.
  CHECK_THROWS_AS(equivariant_monotone_hull(act, fixture_arc_collapse_c8()),
                  Error);

  // The trivial action descends through anything.
  const FiniteAction trivial(c8, {{0, 1, 2, 3, 4, 5, 6, 7}});
  const EquivariantHull th =
      equivariant_monotone_hull(trivial, fixture_arc_collapse_c8());
  CHECK(th.hull.q.codomain().vertex_count() == 7);
  for (Vertex v = 0; v < 7; ++v) CHECK(th.descended.generators()[0][v] == v);
}

TEST_CASE("modulus table for a character under rotation is closed form") {
  // |chi_1(x) - chi_1(y)| = 2 sin(pi |x-y|) and rotations preserve
  // distances, so every omega entry equals 2 sin(pi w / N) where w is the
  // widest grid offset within delta. A grid-aligned rotation keeps every
  // orbit point on the grid, making the identity exact.
  const int grid = 256;
  const TorusSystem sys = rotation_1d("3/256", grid);
  GridFunction chi{1, grid, {}};
  chi.values.resize(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    chi.values[static_cast<std::size_t>(i)] =
        std::polar(1.0, 2.0 * std::numbers::pi * i / grid);
  }
  const double narrow = 2.0 * std::sin(std::numbers::pi * 4.0 / 256.0);
  const double wide = 2.0 * std::sin(std::numbers::pi * 16.0 / 256.0);
  const std::vector<double> deltas{1.0 / 64.0, 1.0 / 16.0};
  const EquicontinuityResult res =
      equicontinuity_estimate(sys, chi, 8, deltas, 0.5);
  REQUIRE(res.table.omega.size() == 8);
  for (const auto& row : res.table.omega) {
    REQUIRE(row.size() == 2);
    CHECK(row[0] == doctest::Approx(narrow).epsilon(1e-12));
    CHECK(row[1] == doctest::Approx(wide).epsilon(1e-12));
  }
  CHECK(res.equicontinuous);
  CHECK(res.table.best_uniform_bound() == doctest::Approx(narrow));

  // Off-grid rotations interpolate between unit-circle samples, which can
  // only shrink the chord: bounded by the closed form, never above it.
  const EquicontinuityResult gold = equicontinuity_estimate(
      rotation_1d("0.6180339887", grid), chi, 8, deltas, 0.5);
  for (const auto& row : gold.table.omega) {
    CHECK(row[0] <= narrow + 1e-12);
    CHECK(row[0] >= narrow * (1.0 - 2e-4));
  }
}

TEST_CASE("omega grows with delta and with doubling iterations") {
  const TorusSystem doubling = fixture_doubling_system();
  const GridFunction tent = fixture_tent(256, 64, 32);
  const std::vector<double> deltas{1.0 / 256.0, 1.0 / 64.0, 1.0 / 16.0};
  const EquicontinuityResult res =
      equicontinuity_estimate(doubling, tent, 7, deltas, 0.25);
  for (const auto& row : res.table.omega) {
    for (std::size_t d = 1; d < row.size(); ++d) CHECK(row[d - 1] <= row[d]);
  }
  // Expansion: after five doublings, the tightest grid pair is half-width
  // apart and straddles the full tent height.
  CHECK(res.table.omega[4][0] == doctest::Approx(1.0));
  CHECK_FALSE(res.equicontinuous);

  const TorusSystem rot = rotation_1d("0.6180339887");
  const EquicontinuityResult rres =
      equicontinuity_estimate(rot, tent, 7, deltas, 0.25);
  CHECK(rres.equicontinuous);
  // The rotation never changes pair distances, and the tent flanks are
  // linear, so rows are constant in j.
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    for (const auto& row : rres.table.omega) {
      CHECK(row[d] == doctest::Approx(rres.table.omega[0][d]));
    }
  }

  CHECK_THROWS_AS(equicontinuity_estimate(rot, tent, 7, {}, 0.25), Error);
}

TEST_CASE("family verdict is the max over members") {
  const TorusSystem rot = rotation_1d("0.6180339887");
  const GridFunction narrow = fixture_tent(256, 40, 4);
  const GridFunction wide = fixture_tent(256, 180, 60);
  const std::vector<double> deltas{1.0 / 32.0};
  const auto fam = equicontinuity_estimate(
      rot, std::vector<GridFunction>{narrow, wide}, 4, deltas, 0.25);
  const auto lone_narrow = equicontinuity_estimate(rot, narrow, 4, deltas, 0.25);
  const auto lone_wide = equicontinuity_estimate(rot, wide, 4, deltas, 0.25);
  for (int j = 0; j < 4; ++j) {
    const std::size_t sj = static_cast<std::size_t>(j);
    CHECK(fam.table.omega[sj][0] ==
          doctest::Approx(std::max(lone_narrow.table.omega[sj][0],
                                   lone_wide.table.omega[sj][0])));
  }
  // The narrow tent alone is steep enough to fail at this delta.
  CHECK_FALSE(lone_narrow.equicontinuous);
  CHECK_FALSE(fam.equicontinuous);
  CHECK(lone_wide.equicontinuous);
}

TEST_CASE("invariance decision methods per system kind") {
  const InvarianceDecision golden = invariance_decision(fixture_golden_rotation());
  CHECK(golden.invariant_constant);
  CHECK_FALSE(golden.heuristic);
  CHECK(golden.method == "independence-search");

  const InvarianceDecision quarter = invariance_decision(rotation_1d("1/4"));
  CHECK_FALSE(quarter.invariant_constant);
  CHECK_FALSE(quarter.heuristic);
  CHECK(quarter.method == "rational-entry");

  // k = (1, 1) pairs the two golden coordinates into an integer relation.
  IntMatrix id2 = IntMatrix::identity(2);
  const TorusSystem related(
      2, id2,
      {RotationEntry::parse("0.6180339887"), RotationEntry::parse("0.3819660113")},
      {Warp::identity(), Warp::identity()}, 64);
  const InvarianceDecision rel = invariance_decision(related);
  CHECK_FALSE(rel.invariant_constant);
  CHECK(rel.method == "integer-relation");

  const InvarianceDecision doubled = invariance_decision(fixture_doubling_system());
  CHECK(doubled.invariant_constant);
  CHECK(doubled.heuristic);
  CHECK(doubled.method == "orbit-density-exact");

  const InvarianceDecision warped = invariance_decision(fixture_warped_product());
  CHECK(warped.heuristic);
  CHECK(warped.method == "orbit-density-float");
  CHECK_FALSE(warped.invariant_constant);

  CHECK(is_invariant_constant(fixture_golden_rotation()));
  CHECK_FALSE(is_invariant_constant(fixture_identity_system()));
}

TEST_CASE("irr equicontinuity detail splits families into parts") {
  const TorusSystem rot = rotation_1d("0.6180339887");
  // Two separated tents inside one member.
  const GridFunction a = fixture_tent(256, 30, 20);
  const GridFunction b = fixture_tent(256, 150, 20);
  GridFunction both{1, 256, {}};
  both.values.resize(256);
  for (std::size_t i = 0; i < 256; ++i) {
    both.values[i] = a.values[i] + b.values[i];
  }
  EquicontinuityParams params;
  params.horizon = 8;
  params.deltas = {1.0 / 64.0};
  params.part_tolerance = Tolerance{0.0};
  const IrrEquicontinuityDetail detail =
      irr_equicontinuity_detail(rot, {both}, params);
  CHECK(detail.part_count == 2);
  CHECK(detail.agree);
  CHECK(detail.family.equicontinuous == detail.parts.equicontinuous);
  CHECK(irr_equicontinuity_check(rot, {both}, params));
}
