#include <benchmark/benchmark.h>

#include "sgs/gdas.hpp"
#include "sgs/gdpa.hpp"
#include "sgs/graph.hpp"
#include "sgs/rng.hpp"
#include "test_support.hpp"

namespace {

sgs::SparseSymMatrix balanced_laplacian(int n) {
  sgs::Rng rng(static_cast<std::uint64_t>(n) * 104729);
  return sgs::generalized_laplacian(sgs::test::random_balanced_pd_graph(n, 6.0, rng));
}

void BM_GdpaAlign(benchmark::State& state) {
  sgs::SparseSymMatrix l = balanced_laplacian(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgs::gdpa_align(l));
  }
  state.SetComplexityN(state.range(0));
}

void BM_GdasSample(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sgs::AlignedOperator aligned = sgs::gdpa_align(balanced_laplacian(n));
  int budget = n / 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgs::gdas_sample(aligned, 0.01, budget));
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_GdpaAlign)->Arg(200)->Arg(500)->Arg(1000)->Complexity();
BENCHMARK(BM_GdasSample)->Arg(200)->Arg(500)->Arg(1000)->Complexity();
