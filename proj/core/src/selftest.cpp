#include "mefkit/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "mefkit/abelian.hpp"
#include "mefkit/complex.hpp"
#include "mefkit/dynamics.hpp"
#include "mefkit/error.hpp"
#include "mefkit/fixtures.hpp"
#include "mefkit/lattice.hpp"
#include "mefkit/quotient.hpp"
#include "mefkit/rng.hpp"
#include "mefkit/spectral.hpp"

namespace mefkit {

namespace {

struct Tally {
  int pass = 0;
  int total = 0;
  void add(bool ok) {
    ++total;
    if (ok) ++pass;
  }
  bool all() const { return pass == total; }
  std::string text() const {
    return std::to_string(pass) + "/" + std::to_string(total);
  }
};

void add_check(SuiteResult& r, std::string name, bool pass,
               std::string detail = {}) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

void add_tally(SuiteResult& r, std::string name, const Tally& t) {
  add_check(r, std::move(name), t.all(), t.text());
}

// Set partitions of {0..n-1} as restricted growth strings; labels are
// canonical (class c first appears before class c+1).
void for_each_set_partition(
    int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      fn(labels);
      return;
    }
    for (int c = 0; c <= used; ++c) {
      labels[static_cast<std::size_t>(i)] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  if (n == 0) return;
  labels[0] = 0;
  rec(1, 1);
}

CellComplex random_complex(Rng& rng, int max_vertices, bool connected) {
  const int n = static_cast<int>(rng.range(connected ? 2 : 1, max_vertices));
  std::set<Edge> edges;
  if (connected) {
    for (Vertex v = 1; v < n; ++v) {
      const Vertex u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v)));
      edges.insert({std::min(u, v), std::max(u, v)});
    }
  }
  const int extra = static_cast<int>(rng.range(0, std::max(1, n / 2)));
  for (int i = 0; i < extra && n >= 2; ++i) {
    const Vertex u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    const Vertex v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    edges.insert({std::min(u, v), std::max(u, v)});
  }
  return CellComplex(n, {edges.begin(), edges.end()}, {});
}

Partition random_partition(Rng& rng, int n) {
  const int target = static_cast<int>(rng.range(1, n));
  std::vector<int> raw(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    raw[static_cast<std::size_t>(v)] =
        static_cast<int>(rng.below(static_cast<std::uint64_t>(target)));
  }
  // Relabel densely by first appearance so every class occurs.
  std::vector<int> remap(static_cast<std::size_t>(target), -1);
  int next = 0;
  for (int& label : raw) {
    if (remap[static_cast<std::size_t>(label)] < 0) {
      remap[static_cast<std::size_t>(label)] = next++;
    }
    label = remap[static_cast<std::size_t>(label)];
  }
  return Partition(std::move(raw));
}

QuotientMap random_quotient(Rng& rng, int max_vertices) {
  ComplexPtr k = share(random_complex(rng, max_vertices, true));
  Partition part = random_partition(rng, k->vertex_count());
  return quotient_by_partition(k, part);
}

SuiteResult suite_betti(std::uint64_t) {
  SuiteResult r{"betti", {}, 0.0};
  const CellComplex torus = torus_grid(2, 4);
  add_check(r, "torus-2-4", betti1(torus) == 2 && betti0(torus) == 1,
            "b0=" + std::to_string(betti0(torus)) +
                " b1=" + std::to_string(betti1(torus)));
  const ComplexPtr cube = fixture_cube_surface();
  add_check(r, "cube-surface", betti1(*cube) == 0 && betti0(*cube) == 1,
            "b1=" + std::to_string(betti1(*cube)));
  for (int n = 1; n <= 5; ++n) {
    const CellComplex w = wedge_circles(n, 4);
    add_check(r, "wedge-" + std::to_string(n) + "-4", betti1(w) == n,
              "b1=" + std::to_string(betti1(w)));
  }
  const CellComplex c8 = cycle_complex(8);
  add_check(r, "c8", betti1(c8) == 1 && betti0(c8) == 1,
            "b1=" + std::to_string(betti1(c8)));
  return r;
}

SuiteResult suite_decomposition(std::uint64_t seed) {
  SuiteResult r{"decomposition", {}, 0.0};
  Rng rng = Rng(seed).fork("decomposition");

  Tally reconstruction, orthogonal_pairs, irreducible_parts, part_counts;
  for (int round = 0; round < 500; ++round) {
    ComplexPtr k = share(random_complex(rng, 32, false));
    const int n = k->vertex_count();
    std::vector<Cx> values(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      if (rng.chance(0.45)) continue;
      const double re = 2.0 * rng.unit() - 1.0;
      const double im = 2.0 * rng.unit() - 1.0;
      values[static_cast<std::size_t>(v)] = Cx{re, im};
    }
    LatticeFunction f(k, values);
    const auto parts = irreducible_decomposition(f, Tolerance{0.0});

    std::vector<Cx> sum(static_cast<std::size_t>(n), Cx{0.0, 0.0});
    for (const auto& part : parts) {
      for (int v = 0; v < n; ++v) {
        sum[static_cast<std::size_t>(v)] += part[v];
      }
    }
    reconstruction.add(sum == values);

    bool orth = true;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        if (!orthogonal(parts[i], parts[j])) orth = false;
      }
    }
    orthogonal_pairs.add(orth);

    bool irr_ok = true;
    for (const auto& part : parts) {
      if (!is_irreducible(part, Tolerance{0.0})) irr_ok = false;
    }
    irreducible_parts.add(irr_ok);

    const VertexSet supp = support(f, Tolerance{0.0});
    part_counts.add(parts.size() ==
                    connected_components(*k, supp).size());
  }
  add_tally(r, "reconstruction-exact", reconstruction);
  add_tally(r, "parts-pairwise-orthogonal", orthogonal_pairs);
  add_tally(r, "parts-irreducible", irreducible_parts);
  add_tally(r, "part-count-equals-support-components", part_counts);

  // Uniqueness on C5 and C6, exhaustively over all support patterns: the
  // all-singletons grouping of the parts is the only grouping whose blocks
  // are all irreducible.
  Tally uniqueness;
  for (int cyc : {5, 6}) {
    ComplexPtr k = share(cycle_complex(cyc));
    for (int mask = 1; mask < (1 << cyc); ++mask) {
      VertexSet s;
      for (int v = 0; v < cyc; ++v) {
        if (mask & (1 << v)) s.push_back(v);
      }
      LatticeFunction f = LatticeFunction::indicator(k, s);
      const auto parts = irr(f, Tolerance{0.0});
      const int p = static_cast<int>(parts.size());
      bool only_singletons_valid = true;
      for_each_set_partition(p, [&](const std::vector<int>& labels) {
        const int blocks =
            1 + *std::max_element(labels.begin(), labels.end());
        bool valid = true;
        for (int b = 0; b < blocks; ++b) {
          LatticeFunction merged = LatticeFunction::zero(k);
          for (int i = 0; i < p; ++i) {
            if (labels[static_cast<std::size_t>(i)] == b) {
              merged = merged + parts[static_cast<std::size_t>(i)];
            }
          }
          if (!is_irreducible(merged, Tolerance{0.0})) valid = false;
        }
        if (valid != (blocks == p)) only_singletons_valid = false;
      });
      uniqueness.add(only_singletons_valid);
    }
  }
  add_tally(r, "uniqueness-exhaustive-c5-c6", uniqueness);
  return r;
}

SuiteResult suite_monotone_equivalence(std::uint64_t seed) {
  SuiteResult r{"monotone-equivalence", {}, 0.0};
  Rng rng = Rng(seed).fork("monotone-equivalence");

  Tally exhaustive;
  for (int cyc : {5, 6}) {
    ComplexPtr k = share(cycle_complex(cyc));
    for_each_set_partition(cyc, [&](const std::vector<int>& labels) {
      const QuotientMap q = quotient_by_partition(k, Partition(labels));
      const bool a = is_monotone_fibers(q);
      const bool b = is_monotone_connected_preimages(q);
      const bool ef = is_monotone_algebraic(q, 20, seed + 1);
      exhaustive.add(a == b && b == ef);
    });
  }
  add_tally(r, "exhaustive-c5-c6-agreement", exhaustive);

  Tally sampled;
  for (int round = 0; round < 200; ++round) {
    const QuotientMap q = random_quotient(rng, 64);
    const std::uint64_t sub_seed = rng.next_u64();
    const bool a = is_monotone_fibers(q);
    const bool b =
        is_monotone_connected_preimages(q, PreimageMode::Auto, 1000, sub_seed);
    const bool ef = is_monotone_algebraic(q, 100, sub_seed);
    sampled.add(a == b && b == ef);
  }
  add_tally(r, "random-200-agreement", sampled);
  return r;
}

SuiteResult suite_monotone_hull(std::uint64_t seed) {
  SuiteResult r{"monotone-hull", {}, 0.0};
  Rng rng = Rng(seed).fork("monotone-hull");

  Tally factorization, q_monotone, fibers_are_components;
  for (int round = 0; round < 200; ++round) {
    const QuotientMap p = random_quotient(rng, 64);
    const MonotoneHull hull = monotone_hull(p);
    const QuotientMap roundtrip = compose(hull.phat, hull.q);
    factorization.add(roundtrip.assignment() == p.assignment() &&
                      same_complex(roundtrip.codomain_ptr(), p.codomain_ptr()));
    q_monotone.add(is_monotone_fibers(hull.q));
    fibers_are_components.add(hull.q.fiber_partition() == rc_partition(p));
  }
  add_tally(r, "phat-after-q-equals-p", factorization);
  add_tally(r, "q-monotone", q_monotone);
  add_tally(r, "q-fibers-equal-fiber-components", fibers_are_components);

  const QuotientMap doubling = fixture_doubling_c8();
  const MonotoneHull hull = monotone_hull(doubling);
  bool identity_hull =
      same_complex(hull.q.domain_ptr(), hull.q.codomain_ptr());
  for (Vertex v = 0; v < 8; ++v) {
    if (hull.q(v) != v) identity_hull = false;
  }
  add_check(r, "doubling-hull-is-identity", identity_hull);
  return r;
}

SuiteResult suite_irr_equicontinuity(std::uint64_t seed) {
  SuiteResult r{"irr-equicontinuity", {}, 0.0};
  Rng rng = Rng(seed).fork("irr-equicontinuity");

  EquicontinuityParams params;
  params.horizon = 64;
  params.deltas = {1.0 / 64.0};
  params.threshold = 0.25;
  params.part_tolerance = Tolerance{0.0};

  Tally agreement, rotations_equi, doublings_not;
  for (int round = 0; round < 50; ++round) {
    const bool doubling = round % 2 == 1;
    std::string a = "0.";
    for (int d = 0; d < 10; ++d) {
      a += static_cast<char>('0' + rng.below(10));
    }
    IntMatrix m(1, 1);
    m.at(0, 0) = doubling ? 2 : 1;
    const TorusSystem sys(1, std::move(m), {RotationEntry::parse(a)},
                          {Warp::identity()}, 256);
    const int members = static_cast<int>(rng.range(2, 3));
    const auto family =
        fixture_bump_family(256, members, 2, 28, 48, 8, rng);
    const IrrEquicontinuityDetail detail =
        irr_equicontinuity_detail(sys, family, params);
    agreement.add(detail.agree);
    if (doubling) {
      doublings_not.add(!detail.family.equicontinuous);
    } else {
      rotations_equi.add(detail.family.equicontinuous);
    }
  }
  add_tally(r, "family-verdict-equals-parts-verdict", agreement);
  add_tally(r, "rotation-instances-equicontinuous", rotations_equi);
  add_tally(r, "doubling-instances-expansive", doublings_not);
  return r;
}

SuiteResult suite_mef(std::uint64_t) {
  SuiteResult r{"mef", {}, 0.0};

  const CellComplex model2 = torus_grid(2, 4);
  const MEFReport warped =
      mef_extract(fixture_warped_product(), model2, 5, 1e-3);
  add_check(r, "warped-product-m", warped.m == 1,
            "m=" + std::to_string(warped.m));
  const double phase_err =
      warped.m == 1 ? std::abs(warped.rotation[0] - 0.6180339887) : 1.0;
  std::ostringstream phase_text;
  phase_text << "err=" << phase_err;
  add_check(r, "warped-product-phase", phase_err <= 1e-6, phase_text.str());
  add_check(r, "warped-product-bound", warped.bound_ok && warped.bound_b0 == 1 &&
                                           warped.bound_b1 == 2,
            "b0=" + std::to_string(warped.bound_b0) +
                " b1=" + std::to_string(warped.bound_b1));

  const MEFReport rotation =
      mef_extract(fixture_torus2_rotation(), model2, 5, 1e-3);
  add_check(r, "torus2-rotation-m", rotation.m == 2,
            "m=" + std::to_string(rotation.m));

  const CellComplex model1 = torus_grid(1, 4);
  const MEFReport identity =
      mef_extract(fixture_identity_system(), model1, 5, 1e-3);
  add_check(r, "identity-inapplicable", !identity.applicable,
            identity.invariance_method);
  return r;
}

SuiteResult suite_bounds(std::uint64_t) {
  SuiteResult r{"bounds", {}, 0.0};
  for (const auto& [name, sys] : fixture_systems()) {
    const CellComplex model = torus_grid(sys.dim(), 4);
    bool rank_bound = false;
    bool spectrum_bound = false;
    std::string detail;
    try {
      const MEFReport report = mef_extract(sys, model, 5, 1e-3);
      rank_bound = report.m * report.bound_b0 <= report.bound_b1;
      const PointSpectrumGroup group = point_spectrum_group(report);
      spectrum_bound = group.rank <= report.bound_b1;
      detail = "m=" + std::to_string(report.m) +
               " b0=" + std::to_string(report.bound_b0) +
               " b1=" + std::to_string(report.bound_b1);
    } catch (const Error& e) {
      detail = e.what();
    }
    add_check(r, name + "-rank-bound", rank_bound, detail);
    add_check(r, name + "-spectrum-bound", spectrum_bound, detail);
  }
  return r;
}

SuiteResult suite_snf(std::uint64_t seed) {
  SuiteResult r{"snf", {}, 0.0};
  Rng rng = Rng(seed).fork("snf");

  Tally identity_ok, unimodular, chain, inverse_ok, kernel_iff_rank;
  for (int round = 0; round < 500; ++round) {
    const std::size_t rows = static_cast<std::size_t>(rng.range(1, 5));
    const std::size_t cols = static_cast<std::size_t>(rng.range(1, 5));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        m.at(i, j) = rng.range(-20, 20);
      }
    }
    const SmithDecomposition s = smith_normal_form(m);
    identity_ok.add(s.u * m * s.v == s.d);
    const Int du = determinant(s.u);
    const Int dv = determinant(s.v);
    unimodular.add((du == 1 || du == -1) && (dv == 1 || dv == -1));

    bool chain_ok = true;
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (diag[i] < 0) chain_ok = false;
      const bool in_rank = i < s.rank;
      if (in_rank && diag[i] == 0) chain_ok = false;
      if (!in_rank && diag[i] != 0) chain_ok = false;
      if (i + 1 < s.rank && diag[i] != 0 && diag[i + 1] % diag[i] != 0) {
        chain_ok = false;
      }
    }
    chain.add(chain_ok);
    inverse_ok.add(s.v * s.v_inv == IntMatrix::identity(cols));

    const HomClassification hom = classify_torus_hom(m);
    kernel_iff_rank.add(hom.kernel_finite == (s.rank == cols));
  }
  add_tally(r, "u-m-v-equals-d", identity_ok);
  add_tally(r, "u-v-unimodular", unimodular);
  add_tally(r, "divisibility-chain", chain);
  add_tally(r, "v-inverse-accumulated", inverse_ok);
  add_tally(r, "kernel-finite-iff-full-rank", kernel_iff_rank);

  Tally kernel_orders, torsion_counts;
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
    IntMatrix m(n, n);
    Int det = 0;
    do {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          m.at(i, j) = rng.range(-4, 4);
        }
      }
      det = determinant(m);
    } while (det == 0 || abs(det) > 50);

    const HomClassification hom = classify_torus_hom(m);
    const Int expected = abs(det);
    kernel_orders.add(hom.kernel_finite && hom.kernel_order &&
                      *hom.kernel_order == expected);

    // Independent torsion count: x = a/q with q = |det| catches every
    // kernel point by Cramer's rule; count solutions of M a = 0 mod q.
    const long long q = expected.convert_to<long long>();
    long long count = 0;
    std::vector<long long> a(n, 0);
    while (true) {
      bool in_kernel = true;
      for (std::size_t i = 0; i < n; ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
          acc += m.at(i, j).convert_to<long long>() * a[j];
        }
        if (((acc % q) + q) % q != 0) in_kernel = false;
      }
      if (in_kernel) ++count;
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (a[i] + 1 < q) {
          ++a[i];
          break;
        }
        a[i] = 0;
      }
      if (i == n) break;
    }
    torsion_counts.add(Int(count) == expected);
  }
  add_tally(r, "kernel-order-equals-abs-det", kernel_orders);
  add_tally(r, "torsion-enumeration-matches", torsion_counts);
  return r;
}

SuiteResult run_suite_inner(const std::string& name, std::uint64_t seed);

SuiteResult suite_determinism(std::uint64_t seed) {
  SuiteResult r{"determinism", {}, 0.0};
  for (const char* name : {"betti", "snf", "decomposition"}) {
    const SuiteResult a = run_suite_inner(name, seed);
    const SuiteResult b = run_suite_inner(name, seed);
    const std::string ta = canonical_text(suite_result_to_json(a));
    const std::string tb = canonical_text(suite_result_to_json(b));
    add_check(r, std::string(name) + "-rerun-byte-identical", ta == tb);
  }
  return r;
}

SuiteResult run_suite_inner(const std::string& name, std::uint64_t seed) {
  if (name == "betti") return suite_betti(seed);
  if (name == "decomposition") return suite_decomposition(seed);
  if (name == "monotone-equivalence") return suite_monotone_equivalence(seed);
  if (name == "monotone-hull") return suite_monotone_hull(seed);
  if (name == "irr-equicontinuity") return suite_irr_equicontinuity(seed);
  if (name == "mef") return suite_mef(seed);
  if (name == "bounds") return suite_bounds(seed);
  if (name == "snf") return suite_snf(seed);
  if (name == "determinism") return suite_determinism(seed);
  fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const SuiteCheck& c) { return c.pass; });
}

const std::vector<std::string>& selftest_suite_names() {
  static const std::vector<std::string> names = {
      "betti",         "decomposition",      "monotone-equivalence",
      "monotone-hull", "irr-equicontinuity", "mef",
      "bounds",        "snf",                "determinism"};
  return names;
}

SuiteResult run_selftest_suite(const std::string& name, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result = run_suite_inner(name, seed);
  const auto stop = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
  std::vector<SuiteResult> results;
  for (const std::string& name : selftest_suite_names()) {
    results.push_back(run_selftest_suite(name, seed));
  }
  return results;
}

Json suite_result_to_json(const SuiteResult& result) {
  Json checks = Json::array();
  for (const SuiteCheck& c : result.checks) {
    checks.push_back(
        Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return Json{{"suite", result.suite},
              {"pass", result.pass()},
              {"checks", std::move(checks)}};
}

Json selftest_report_json(const std::vector<SuiteResult>& results) {
  Json suites = Json::array();
  bool all = true;
  for (const SuiteResult& r : results) {
    suites.push_back(suite_result_to_json(r));
    if (!r.pass()) all = false;
  }
  return Json{{"pass", all}, {"suites", std::move(suites)}};
}

}  // namespace mefkit
