#include <benchmark/benchmark.h>

#include "psigrh/bound_engine.hpp"
#include "psigrh/field_params.hpp"

using namespace psigrh;

namespace {

const FieldParams quintic(5, 1, 2, 12.0);

void BM_theorem1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_bound(1e6, 500.0, quintic).value);
}
BENCHMARK(BM_theorem1);

void BM_oesterle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oesterle_bound(1e6, quintic));
}
BENCHMARK(BM_oesterle);

void BM_corollary1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(corollary1_bound(1e6, quintic).value);
}
BENCHMARK(BM_corollary1);

void BM_optimize_T(benchmark::State& state) {
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(optimize_T(x, quintic).report.value);
}
BENCHMARK(BM_optimize_T)->Arg(1000)->Arg(1000000)->Arg(100000000);

void BM_best_bound(benchmark::State& state) {
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(best_bound(x, quintic).value);
}
BENCHMARK(BM_best_bound)->Arg(1000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
