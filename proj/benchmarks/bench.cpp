#include <benchmark/benchmark.h>

#include "sternlab/minkowski.hpp"
#include "sternlab/rng.hpp"
#include "sternlab/stern.hpp"
#include "sternlab/transfer.hpp"

namespace {

void BM_SternEval(benchmark::State& state) {
  const auto bits = static_cast<std::size_t>(state.range(0));
  sternlab::CounterRng rng(7);
  const sternlab::BitWord w = sternlab::BitWord::random(bits, rng);
  const sternlab::BigNat n = w.to_index();
  for (auto _ : state) benchmark::DoNotOptimize(sternlab::stern(n));
}
BENCHMARK(BM_SternEval)->Arg(64)->Arg(1024)->Arg(16384);

void BM_RowValues(benchmark::State& state) {
  const auto N = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sternlab::row_values(N));
}
BENCHMARK(BM_RowValues)->Arg(16)->Arg(20)->Arg(22);

void BM_BuildQuadrature(benchmark::State& state) {
  const auto depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sternlab::build_quadrature(depth));
}
BENCHMARK(BM_BuildQuadrature)->Arg(14)->Arg(18)->Arg(20);

void BM_OperatorEig(benchmark::State& state) {
  const auto degree = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    const auto A = sternlab::build_operator({0.05, 0}, {0.5, 0}, degree);
    benchmark::DoNotOptimize(sternlab::dominant_eig(A));
  }
}
BENCHMARK(BM_OperatorEig)->Arg(16)->Arg(32)->Arg(64);

void BM_SolveRho(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(sternlab::solve_rho({0.05, 0}));
}
BENCHMARK(BM_SolveRho);

}  // namespace

BENCHMARK_MAIN();
