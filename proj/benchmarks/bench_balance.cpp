#include <benchmark/benchmark.h>

#include "sgs/balance.hpp"
#include "sgs/rng.hpp"
#include "test_support.hpp"

namespace {

sgs::SignedGraph make_graph(int n) {
  sgs::Rng rng(static_cast<std::uint64_t>(n) * 7919);
  return sgs::test::random_signed_graph(n, 6.0, 0.1, 2.0, 0.5, rng);
}

void BM_Balance(benchmark::State& state) {
  sgs::SignedGraph g = make_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgs::balance(g, 0));
  }
  state.SetComplexityN(state.range(0));
}

void BM_IsBalanced(benchmark::State& state) {
  sgs::SignedGraph g = make_graph(static_cast<int>(state.range(0)));
  sgs::BalanceResult balanced = sgs::balance(g, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgs::is_balanced(balanced.graph));
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_Balance)->Arg(500)->Arg(1000)->Arg(2000)->Arg(4000)->Arg(8000)->Complexity();
BENCHMARK(BM_IsBalanced)->Arg(1000)->Arg(4000)->Arg(16000)->Complexity();

BENCHMARK_MAIN();
