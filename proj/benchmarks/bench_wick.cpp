#include <benchmark/benchmark.h>

#include "kmr/depth1.hpp"

using namespace kmr;

namespace {

VAState sample(int E, int H, int F) {
  VAState v = VAState::of({Sym::gamma({E, 0}, 0), Sym::beta({H, 1}, -1)});
  v += VAState::of({Sym::gamma({F, 1}, -1), Sym::beta({E, 0}, -2)}, ZPoly(Q(3)));
  v += VAState::of({Sym::s(E, H, 1, -1)});
  return v;
}

}  // namespace

static void BM_NthProduct(benchmark::State& state) {
  AffineData ad = build_affine_data("A1~");
  VAState a = sample(ad.label_of("E"), ad.label_of("H"), ad.label_of("F"));
  VAState b = sample(ad.label_of("F"), ad.label_of("H"), ad.label_of("E"));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nth_product(a, b, n));
}
BENCHMARK(BM_NthProduct)->DenseRange(0, 2);

static void BM_ModeOracle(benchmark::State& state) {
  AffineData ad = build_affine_data("A1~");
  VAState a = sample(ad.label_of("E"), ad.label_of("H"), ad.label_of("F"));
  VAState b = sample(ad.label_of("F"), ad.label_of("H"), ad.label_of("E"));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mode_apply(a, n, b));
}
BENCHMARK(BM_ModeOracle)->DenseRange(0, 2);

static void BM_Depth1Products(benchmark::State& state) {
  LoopAlgebra g(build_affine_data("A1~"));
  Realization R(g, static_cast<int>(state.range(0)));
  D1State a = D1State::from_dg(R.uprho(g.e(0))), b = D1State::from_dg(R.uprho(g.f(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(zero_product(a, b));
    benchmark::DoNotOptimize(first_product(a, b));
  }
}
BENCHMARK(BM_Depth1Products)->Arg(4)->Arg(6);
