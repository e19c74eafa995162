#include <benchmark/benchmark.h>

#include "eoe/graph.hpp"
#include "eoe/transforms.hpp"

namespace {

void BM_RingClosedForm(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  double s = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eoe::laplace_N_ring(n, s));
    s += 1e-9;
  }
}
BENCHMARK(BM_RingClosedForm)->Arg(6)->Arg(1000)->Arg(1'000'000);

void BM_LaplaceTFamily(benchmark::State& state) {
  const eoe::Graph g = eoe::build_bipartite(2, static_cast<std::uint32_t>(state.range(0)));
  const auto lt = eoe::laplace_T_from_N(eoe::transform_N(g), 1e3, 1.0);
  double s = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lt(s));
    s += 1e-9;
  }
}
BENCHMARK(BM_LaplaceTFamily)->Arg(10)->Arg(10'000);

void BM_GenericSolve(benchmark::State& state) {
  const auto chain = eoe::pair_chain(eoe::build_ring(static_cast<std::uint32_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(eoe::laplace_N_generic(chain, 1.0));
  state.SetLabel(std::to_string(chain.size()) + " states");
}
BENCHMARK(BM_GenericSolve)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
