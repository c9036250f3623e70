#include <benchmark/benchmark.h>

#include <vector>

#include "psigrh/exact_psi.hpp"
#include "psigrh/field_params.hpp"

using namespace psigrh;

namespace {

const FieldDefinition gaussian = FieldDefinition::quadratic(-4);
const FieldDefinition cubic =
    FieldDefinition::polynomial({mpz(-1), mpz(-1), mpz(0), mpz(1)});

void BM_psi_quadratic(benchmark::State& state) {
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(psi_K(gaussian, x, 1));
}
BENCHMARK(BM_psi_quadratic)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_psi_quadratic_mt(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(psi_K(gaussian, 1e6, 4));
}
BENCHMARK(BM_psi_quadratic_mt)->Unit(benchmark::kMillisecond);

void BM_psi_cubic(benchmark::State& state) {
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(psi_K(cubic, x, 1));
}
BENCHMARK(BM_psi_cubic)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_lambda_tilde(benchmark::State& state) {
  long long n = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda_tilde(gaussian, n));
    if (++n > 100000) n = 2;
  }
}
BENCHMARK(BM_lambda_tilde);

void BM_kronecker(benchmark::State& state) {
  unsigned long long n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kronecker_symbol(-471, n));
    if (++n > 1000000) n = 1;
  }
}
BENCHMARK(BM_kronecker);

void BM_poly_shape(benchmark::State& state) {
  const std::vector<mpz>& poly = cubic.poly;
  for (auto _ : state) benchmark::DoNotOptimize(poly_shape_mod_p(poly, 10007).size());
}
BENCHMARK(BM_poly_shape);

}  // namespace

BENCHMARK_MAIN();
