#include <benchmark/benchmark.h>

#include "eoe/oracle.hpp"

namespace {

void BM_JointChainBuild(benchmark::State& state) {
  const eoe::Graph g = eoe::build_complete(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eoe::oracle::JointChain(g, 1.0, 1.0).size());
}
BENCHMARK(BM_JointChainBuild)->Arg(6)->Arg(20);

void BM_JointLaplace(benchmark::State& state) {
  const eoe::Graph g = eoe::build_ring(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eoe::oracle::exact_laplace_T_joint(g, 1.0, 1.0, 1.0));
}
BENCHMARK(BM_JointLaplace)->Arg(6)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_PmfN(benchmark::State& state) {
  const auto chain = eoe::meeting_chain(eoe::build_ring(200));
  for (auto _ : state) benchmark::DoNotOptimize(eoe::oracle::exact_pmf_N(chain, state.range(0)).tail);
}
BENCHMARK(BM_PmfN)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
