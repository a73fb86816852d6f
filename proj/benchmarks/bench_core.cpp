// Micro benchmarks for the hot paths of each module.

#include <benchmark/benchmark.h>

#include <vector>

#include "chlab/harness.hpp"
#include "chlab/potential.hpp"
#include "chlab/spectral.hpp"

using namespace chlab;

namespace {

const PotentialProfile& sech2_profile(std::size_t n) {
  static std::vector<std::pair<std::size_t, PotentialProfile>> cache;
  for (const auto& [size, p] : cache) {
    if (size == n) return p;
  }
  const auto g = SpatialGrid::make_uniform(60.0, n);
  cache.emplace_back(n, build_profile(sech2_samples(g, 0.2, 3.0), g));
  return cache.back().second;
}

void BM_RealFft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RealFft fft(n);
  std::vector<double> u(n, 1.0);
  std::vector<cplx> s(fft.spectrum_size());
  for (auto _ : state) {
    fft.forward(u, s);
    fft.inverse(s, u);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_RealFft)->Arg(1024)->Arg(4096);

void BM_ScatteringCoefficients(benchmark::State& state) {
  const JostSolver solver(sech2_profile(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solver.coefficients(1.3));
}
BENCHMARK(BM_ScatteringCoefficients)->Arg(1024)->Arg(2048);

void BM_FindEigenvalues(benchmark::State& state) {
  const JostSolver solver(sech2_profile(2048));
  for (auto _ : state) benchmark::DoNotOptimize(find_eigenvalues(solver));
}
BENCHMARK(BM_FindEigenvalues)->Unit(benchmark::kMillisecond);

void BM_StationaryPoints(benchmark::State& state) {
  double xi = -0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary_points(xi));
    xi = xi < 1.9 ? xi + 0.01 : -0.2;
  }
}
BENCHMARK(BM_StationaryPoints);

void BM_CauchyTransform(benchmark::State& state) {
  const JostSolver solver(sech2_profile(1024));
  ReflectionOptions ro;
  ro.nk = static_cast<std::size_t>(state.range(0));
  const auto density = reflection_density(reflection(solver, ro));
  for (auto _ : state) benchmark::DoNotOptimize(density.transform(cplx(0.3, 0.5)));
}
BENCHMARK(BM_CauchyTransform)->Arg(256)->Arg(1024);

void BM_Reconstruct(benchmark::State& state) {
  DiscreteSpectrum s;
  for (int i = 0; i < state.range(0); ++i) {
    s.poles.push_back(0.1 + 0.35 * i / std::max<double>(1, static_cast<double>(state.range(0)) - 1));
    s.constants.push_back(1.0);
  }
  s.normalize();
  const auto model = reflectionless_model(s);
  double y = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(model, y, 5.0));
    y = y < 30.0 ? y + 0.1 : -10.0;
  }
}
BENCHMARK(BM_Reconstruct)->Arg(1)->Arg(2)->Arg(4);

void BM_EvolveUnitTime(benchmark::State& state) {
  const PeriodicGrid grid{-200.0, 600.0, static_cast<std::size_t>(state.range(0))};
  ProfileSpec spec;
  const auto u0 = sample_profile(spec, grid.nodes());
  for (auto _ : state) benchmark::DoNotOptimize(evolve(grid, u0, {0.0, 1.0}));
}
BENCHMARK(BM_EvolveUnitTime)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
