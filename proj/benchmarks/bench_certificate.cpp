#include <benchmark/benchmark.h>

#include <vector>

#include "psigrh/zero_bounds.hpp"

using namespace psigrh;

namespace {

std::vector<mpq> small_nodes(size_t q) {
  const std::vector<mpq>& ref = reference_nodes();
  return std::vector<mpq>(ref.begin(), ref.begin() + q);
}

void BM_build_system(benchmark::State& state) {
  std::vector<mpq> nodes = small_nodes(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_certificate_system(nodes).matrix.size());
}
BENCHMARK(BM_build_system)->Arg(8)->Arg(22)->Unit(benchmark::kMillisecond);

void BM_solve(benchmark::State& state) {
  std::vector<mpq> nodes = small_nodes(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_certificate(nodes).coef_scaled.size());
}
BENCHMARK(BM_solve)->Arg(8)->Arg(22)->Unit(benchmark::kMillisecond);

void BM_sign_of_S(benchmark::State& state) {
  const MajorantCertificate& cert = reference_certificate();
  long long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sign_of_S(cert, n));
}
BENCHMARK(BM_sign_of_S)->Arg(100)->Arg(60976)->Arg(127999);

void BM_verify_majorization(benchmark::State& state) {
  const MajorantCertificate& cert = reference_certificate();
  for (auto _ : state) benchmark::DoNotOptimize(verify_majorization(cert).pass);
}
BENCHMARK(BM_verify_majorization)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_verify_prime_sum(benchmark::State& state) {
  const MajorantCertificate& cert = reference_certificate();
  for (auto _ : state) benchmark::DoNotOptimize(verify_prime_sum(cert).prime_sum_slack);
}
BENCHMARK(BM_verify_prime_sum)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
