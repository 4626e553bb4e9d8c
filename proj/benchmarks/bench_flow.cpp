#include <benchmark/benchmark.h>

#include "kmr/realization.hpp"

using namespace kmr;

// coordinate polynomials of e1 up to the given cutoff
static void BM_CoordinateFlow(benchmark::State& state) {
  LoopAlgebra g(build_affine_data("A1~"));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PolyFamily p = coordinate_flow(g, g.e(1), k);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_CoordinateFlow)->DenseRange(5, 9, 2)->Unit(benchmark::kMillisecond);

static void BM_RhoA2(benchmark::State& state) {
  LoopAlgebra g(build_affine_data("A2~"));
  for (auto _ : state) {
    Realization R(g, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(R.rho(g.f(0)));
  }
}
BENCHMARK(BM_RhoA2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
