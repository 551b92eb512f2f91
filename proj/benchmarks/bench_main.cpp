#include <benchmark/benchmark.h>

#include <vector>

#include "mefkit/complex.hpp"
#include "mefkit/fixtures.hpp"
#include "mefkit/lattice.hpp"
#include "mefkit/quotient.hpp"
#include "mefkit/rng.hpp"
#include "mefkit/spectral.hpp"

namespace {

using namespace mefkit;

void bm_betti1_torus(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  const CellComplex t = torus_grid(2, res);
  for (auto _ : state) {
    benchmark::DoNotOptimize(betti1(t));
  }
  state.SetLabel(std::to_string(t.squares().size()) + " squares");
}
BENCHMARK(bm_betti1_torus)->Arg(4)->Arg(6)->Arg(8);

void bm_smith_normal_form(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(42);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.range(-20, 20);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_normal_form(m).rank);
  }
}
BENCHMARK(bm_smith_normal_form)->Arg(4)->Arg(8)->Arg(16);

void bm_irreducible_decomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexPtr k = share(cycle_complex(n));
  Rng rng(7);
  std::vector<Cx> values(static_cast<std::size_t>(n));
  for (auto& v : values) {
    if (rng.chance(0.5)) v = Cx{rng.unit() - 0.5, 0.0};
  }
  const LatticeFunction f(k, values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(irreducible_decomposition(f).size());
  }
}
BENCHMARK(bm_irreducible_decomposition)->Arg(64)->Arg(512)->Arg(4096);

void bm_monotone_fibers(benchmark::State& state) {
  const QuotientMap p = fixture_doubling_c8();
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_monotone_fibers(p));
  }
}
BENCHMARK(bm_monotone_fibers);

void bm_monotone_connected_preimages(benchmark::State& state) {
  const QuotientMap p = fixture_arc_collapse_c8();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        is_monotone_connected_preimages(p, PreimageMode::Exhaustive));
  }
}
BENCHMARK(bm_monotone_connected_preimages);

void bm_monotone_hull(benchmark::State& state) {
  const ComplexPtr c = share(cycle_complex(64));
  std::vector<int> labels(64);
  for (int v = 0; v < 64; ++v) labels[static_cast<std::size_t>(v)] = v / 2;
  const QuotientMap p = quotient_by_partition(c, Partition(labels));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monotone_hull(p).q.codomain().vertex_count());
  }
}
BENCHMARK(bm_monotone_hull);

void bm_eigen_scan(benchmark::State& state) {
  const TorusSystem sys = fixture_golden_rotation();
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigen_scan(sys, kmax, 1e-6).passing.size());
  }
}
BENCHMARK(bm_eigen_scan)->Arg(4)->Arg(16)->Arg(64);

void bm_equicontinuity(benchmark::State& state) {
  const TorusSystem sys = fixture_golden_rotation();
  const GridFunction tent = fixture_tent(256, 64, 32);
  const std::vector<double> deltas = default_deltas(256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        equicontinuity_estimate(sys, tent, 16, deltas, 0.25).equicontinuous);
  }
}
BENCHMARK(bm_equicontinuity);

}  // namespace

BENCHMARK_MAIN();
