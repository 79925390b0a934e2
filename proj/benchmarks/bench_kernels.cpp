#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "cauchydos/bessel.hpp"
#include "cauchydos/chebyshev.hpp"
#include "cauchydos/eigen.hpp"
#include "cauchydos/ensemble.hpp"
#include "cauchydos/free_models.hpp"
#include "cauchydos/tree_resolvent.hpp"

using namespace cauchydos;

static void BM_BesselSequence(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j_sequence(n, 0.5 * n));
}
BENCHMARK(BM_BesselSequence)->Arg(64)->Arg(1024)->Arg(16384);

static void BM_EigDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = draw_sample(CauchyKernel(1.0), n, 1, 0);
  const auto op = build_lattice({1, static_cast<int>(n)}, s.omegas);
  EigOptions opt;
  opt.allow_banded = false;
  opt.vectors = EigenvectorMode::selected_rows;
  opt.rows = {0};
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(op, opt));
}
BENCHMARK(BM_EigDense)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_EigBand(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = draw_sample(CauchyKernel(1.0), n, 1, 0);
  const auto op = build_lattice({1, static_cast<int>(n)}, s.omegas);
  const EigOptions opt{EigenvectorMode::selected_rows, {0}};
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(op, opt));
}
BENCHMARK(BM_EigBand)->Arg(256)->Arg(1024)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_ChebyshevEvolve(benchmark::State& state) {
  const auto op = build_lattice({1, 4096});
  std::vector<std::complex<double>> v(4096);
  v[0] = 1.0;
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chebyshev_evolve(op, v, t));
}
BENCHMARK(BM_ChebyshevEvolve)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_LatticeDosCurve(benchmark::State& state) {
  const LatticeFreeModel model(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice_dos_curve(model, CauchyKernel(1.1), EnergyGrid{-6.0, 6.0, 0.02}));
  }
}
BENCHMARK(BM_LatticeDosCurve)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_TreeResolvent(benchmark::State& state) {
  const TreeSpec spec{2, static_cast<int>(state.range(0))};
  const auto s = draw_sample(CauchyKernel(1.0), spec.vertex_count(), 1, 0);
  TreeResolvent tr(spec, s.omegas);
  std::vector<std::complex<double>> out;
  for (auto _ : state) {
    tr.diagonal({0.3, 0.1}, 7, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_TreeResolvent)->Arg(10)->Arg(14);
BENCHMARK_MAIN();
