#include <benchmark/benchmark.h>

#include "sgs/learn.hpp"
#include "sgs/rng.hpp"
#include "sgs/solvers.hpp"
#include "test_support.hpp"

namespace {

void BM_CgSolve(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sgs::Rng rng(static_cast<std::uint64_t>(n) * 31337);
  sgs::SparseSymMatrix a = sgs::test::random_spd(n, 8.0 / n, rng);
  std::vector<double> b(static_cast<std::size_t>(n));
  for (double& v : b) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgs::cg_solve(a, b, 1e-8));
  }
  state.SetComplexityN(state.range(0));
}

void BM_SmallestEigenpair(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sgs::Rng rng(static_cast<std::uint64_t>(n) * 65537);
  sgs::SparseSymMatrix l =
      sgs::generalized_laplacian(sgs::test::random_balanced_pd_graph(n, 6.0, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgs::smallest_eigenpair(l, 1e-8, 20000));
  }
  state.SetComplexityN(state.range(0));
}

void BM_Glasso(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sgs::SignalMatrix x;
  x.num_signals = 10 * n;
  x.num_nodes = n;
  x.data.resize(static_cast<std::size_t>(x.num_signals) * static_cast<std::size_t>(n));
  sgs::Rng rng(static_cast<std::uint64_t>(n) * 49999);
  for (double& v : x.data) v = rng.uniform(-1.0, 1.0);
  sgs::SparseSymMatrix c = sgs::empirical_covariance(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgs::glasso(c, 0.1));
  }
}

}  // namespace

BENCHMARK(BM_CgSolve)->Arg(100)->Arg(400)->Arg(1600)->Complexity();
BENCHMARK(BM_SmallestEigenpair)->Arg(100)->Arg(400)->Arg(1600)->Complexity();
BENCHMARK(BM_Glasso)->Arg(20)->Arg(40)->Arg(80);
