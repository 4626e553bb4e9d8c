#include <benchmark/benchmark.h>

#include "kmr/zeta.hpp"

using namespace kmr;

static void BM_SolvePhiSl2(benchmark::State& state) {
  LoopAlgebra g(build_affine_data("A1~"));
  for (auto _ : state) {
    Splitting sp(g, static_cast<int>(state.range(0)), 2);
    benchmark::DoNotOptimize(sp.solve_phi());
  }
}
BENCHMARK(BM_SolvePhiSl2)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_VerifySl2(benchmark::State& state) {
  LoopAlgebra g(build_affine_data("A1~"));
  Splitting sp(g, 6, 2);
  PhiMap phi = sp.solve_phi().phi;
  for (auto _ : state) benchmark::DoNotOptimize(sp.verify(phi));
}
BENCHMARK(BM_VerifySl2)->Unit(benchmark::kMillisecond);

static void BM_SolveVerifyA2(benchmark::State& state) {
  LoopAlgebra g(build_affine_data("A2~"));
  for (auto _ : state) {
    Splitting sp(g, 4, 1);
    benchmark::DoNotOptimize(sp.verify(sp.solve_phi().phi));
  }
}
BENCHMARK(BM_SolveVerifyA2)->Unit(benchmark::kSecond)->Iterations(1);

static void BM_ZetaRow(benchmark::State& state) {
  LoopAlgebra g(build_affine_data("A1~"));
  PhiMap phi = Splitting(g, 6, 2).solve_phi().phi;
  const int H = g.data().label_of("H");
  for (auto _ : state) benchmark::DoNotOptimize(zeta_row(g, phi, LieElt::j(H, 1), LieElt::j(H, -1), 12));
}
BENCHMARK(BM_ZetaRow)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
