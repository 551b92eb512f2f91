#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mefkit/complex.hpp"
#include "mefkit/error.hpp"
#include "mefkit/fixtures.hpp"
#include "mefkit/spectral.hpp"

using namespace mefkit;

namespace {

TorusSystem rotation_2d(const std::string& a0, const std::string& a1) {
  return TorusSystem(2, IntMatrix::identity(2),
                     {RotationEntry::parse(a0), RotationEntry::parse(a1)},
                     {Warp::identity(), Warp::identity()}, 64);
}

}  // namespace

TEST_CASE("characters") {
  const std::vector<long long> k{2, -1};
  const std::vector<double> x{0.25, 0.5};
  const Cx got = character(k, x);
  const Cx want = std::polar(1.0, 2.0 * std::numbers::pi * (0.5 - 0.5));
  CHECK(std::abs(got - want) < 1e-12);
  CHECK(std::abs(character(std::vector<long long>{0, 0}, x) - Cx{1, 0}) <
        1e-15);
  CHECK_THROWS_AS(character(std::vector<long long>{1}, x), Error);
}

TEST_CASE("characters are exact eigenfunctions of rotations") {
  const TorusSystem rot = fixture_golden_rotation();
  const double a = 0.6180339887;
  for (long long k = -5; k <= 5; ++k) {
    const EigenHit hit = eigen_test(rot, {k}, 1e-9);
    CHECK(hit.passes);
    CHECK(hit.residual < 1e-12);
    const Cx want = std::polar(1.0, 2.0 * std::numbers::pi * k * a);
    CHECK(std::abs(hit.lambda - want) < 1e-9);
  }
}

TEST_CASE("lambda is a homomorphism with conjugate symmetry on rotations") {
  const TorusSystem rot = rotation_2d("0.6180339887", "0.4142135624");
  std::vector<std::vector<long long>> ks;
  std::vector<Cx> lambdas;
  for (long long i = -2; i <= 2; ++i) {
    for (long long j = -2; j <= 2; ++j) {
      const EigenHit hit = eigen_test(rot, {i, j}, 1e-9);
      REQUIRE(hit.passes);
      ks.push_back({i, j});
      lambdas.push_back(hit.lambda);
    }
  }
  for (std::size_t p = 0; p < ks.size(); ++p) {
    for (std::size_t q = 0; q < ks.size(); ++q) {
      const std::vector<long long> sum{ks[p][0] + ks[q][0],
                                       ks[p][1] + ks[q][1]};
      if (std::abs(sum[0]) > 2 || std::abs(sum[1]) > 2) continue;
      const EigenHit hs = eigen_test(rot, sum, 1e-9);
      CHECK(std::abs(hs.lambda - lambdas[p] * lambdas[q]) < 1e-9);
    }
  }
  for (std::size_t p = 0; p < ks.size(); ++p) {
    const EigenHit neg = eigen_test(rot, {-ks[p][0], -ks[p][1]}, 1e-9);
    CHECK(std::abs(neg.lambda - std::conj(lambdas[p])) < 1e-12);
  }
}

TEST_CASE("doubling rejects every nonzero frequency with unit residual") {
  const TorusSystem doubling = fixture_doubling_system();
  const EigenHit one = eigen_test(doubling, {1}, 1e-3);
  CHECK_FALSE(one.passes);
  CHECK(one.residual == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.lambda == Cx{0, 0});

  const EigenHit zero = eigen_test(doubling, {0}, 1e-3);
  CHECK(zero.passes);
  CHECK(zero.residual < 1e-15);
  CHECK(std::abs(zero.lambda - Cx{1, 0}) < 1e-15);

  const EigenScan scan = eigen_scan(doubling, 2, 1e-3);
  REQUIRE(scan.passing.size() == 1);
  CHECK(scan.passing.front() == std::vector<long long>{0});
  CHECK(scan.max_passing_residual == doctest::Approx(0.0));
  CHECK(scan.min_rejected_residual == doctest::Approx(1.0));
  CHECK(scan.symmetric);
  CHECK(scan.additively_closed);
}

TEST_CASE("frequency box order and aliasing guard") {
  const TorusSystem rot = rotation_2d("0", "0");
  const EigenScan scan = eigen_scan(rot, 1, 1e-6);
  REQUIRE(scan.hits.size() == 9);
  CHECK(scan.hits.front().k == std::vector<long long>{-1, -1});
  CHECK(scan.hits[1].k == std::vector<long long>{-1, 0});
  CHECK(scan.hits.back().k == std::vector<long long>{1, 1});

  const TorusSystem small = fixture_golden_rotation();  // grid 256
  CHECK_THROWS_AS(eigen_test(small, {128}, 1e-6), Error);
  CHECK_NOTHROW(eigen_test(small, {127}, 1e-6));
  CHECK_THROWS_AS(eigen_scan(small, 128, 1e-6), Error);
  CHECK_THROWS_AS(eigen_test(small, {1}, 0.0), Error);
}

TEST_CASE("mef report on the named systems") {
  const CellComplex model1 = torus_grid(1, 4);
  const CellComplex model2 = torus_grid(2, 4);

  const MEFReport golden = mef_extract(fixture_golden_rotation(), model1, 5, 1e-3);
  CHECK(golden.m == 1);
  CHECK(golden.applicable);
  CHECK_FALSE(golden.heuristic);
  CHECK(golden.bound_ok);
  CHECK(golden.finite_order == 1);
  REQUIRE(golden.rotation.size() == 1);
  CHECK(golden.rotation[0] == doctest::Approx(0.6180339887).epsilon(1e-9));
  REQUIRE(golden.rotation_exact.size() == 1);
  CHECK_FALSE(golden.rotation_exact[0].has_value());

  const MEFReport torus2 = mef_extract(fixture_torus2_rotation(), model2, 5, 1e-3);
  CHECK(torus2.m == 2);
  CHECK(torus2.bound_ok);
  // Every passing frequency lies in the lattice of the reported basis.
  IntMatrix basis(torus2.frequency_lattice_basis.size(), 2);
  for (std::size_t i = 0; i < torus2.frequency_lattice_basis.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      basis.at(i, j) = torus2.frequency_lattice_basis[i][j];
    }
  }
  for (const EigenHit& hit : torus2.passing) {
    CHECK(in_row_lattice(basis, {Int(hit.k[0]), Int(hit.k[1])}));
  }

  const MEFReport identity = mef_extract(fixture_identity_system(), model1, 5, 1e-3);
  CHECK_FALSE(identity.applicable);
  CHECK(identity.invariance_method == "rational-entry");
  // Advisory content is still emitted: every frequency passes for the identity.
  CHECK(identity.m == 1);

  const MEFReport warped = mef_extract(fixture_warped_product(), model2, 5, 1e-3);
  CHECK(warped.m == 1);
  CHECK(warped.heuristic);
  REQUIRE(warped.rotation.size() == 1);
  CHECK(std::abs(warped.rotation[0] - 0.6180339887) <= 1e-6);
}

TEST_CASE("disconnected models contribute a finite factor") {
  // Two disjoint 4-cycles: b0 = 2, b1 = 2.
  const CellComplex two_loops = build_complex(
      8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7}});
  REQUIRE(betti0(two_loops) == 2);
  REQUIRE(betti1(two_loops) == 2);
  const MEFReport r =
      mef_extract(fixture_golden_rotation(), two_loops, 3, 1e-3);
  CHECK(r.finite_order == 2);
  CHECK(r.m == 1);
  CHECK(r.bound_ok);  // 1 * 2 <= 2
  const PointSpectrumGroup g = point_spectrum_group(r);
  CHECK(g.rank == 1);
  CHECK(g.finite_order == 2);
  CHECK(g.generator_count == 2);
}

TEST_CASE("rank bound violations throw") {
  MEFReport fake;
  fake.m = 3;
  fake.bound_b0 = 1;
  fake.bound_b1 = 2;
  fake.bound_ok = false;
  fake.applicable = true;
  CHECK_THROWS_AS(point_spectrum_group(fake), Error);
  try {
    point_spectrum_group(fake);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TheoremViolation);
  }

  // Extraction refuses to emit a contradictory report outright: a pure
  // rotation has full point spectrum, so a 1-cycle model cannot host a
  // 2-torus rotation.
  const CellComplex model1 = torus_grid(1, 4);
  CHECK_THROWS_AS(
      mef_extract(fixture_torus2_rotation(), model1, 5, 1e-3), Error);
}

TEST_CASE("point spectrum group of ordinary reports") {
  const MEFReport golden =
      mef_extract(fixture_golden_rotation(), torus_grid(1, 4), 5, 1e-3);
  const PointSpectrumGroup g = point_spectrum_group(golden);
  CHECK(g.rank == 1);
  CHECK(g.finite_order == 1);
  CHECK(g.generator_count == 1);
}
