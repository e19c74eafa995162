#include <benchmark/benchmark.h>

#include "eoe/simulator.hpp"

namespace {

// range(0): graph selector, range(1): lambda / gamma.
eoe::Graph pick(std::int64_t k) {
  switch (k) {
    case 0:
      return eoe::build_complete(100);
    case 1:
      return eoe::build_bipartite(1, 100);
    default:
      return eoe::build_ring(100);
  }
}

template <eoe::Engine E>
void BM_Simulate(benchmark::State& state) {
  const eoe::Graph g = pick(state.range(0));
  const double lambda = static_cast<double>(state.range(1));
  eoe::Rng rng(1);
  std::uint64_t jumps = 0;
  for (auto _ : state) {
    const auto x = eoe::simulate_eoe(g, lambda, 1.0, rng, 0, E);
    jumps += x.n_jumps;
    benchmark::DoNotOptimize(x.T);
  }
  state.counters["jumps/sample"] = benchmark::Counter(static_cast<double>(jumps), benchmark::Counter::kAvgIterations);
  state.SetLabel(g.descriptor());
}
BENCHMARK_TEMPLATE(BM_Simulate, eoe::Engine::Event)->ArgsProduct({{0, 1, 2}, {10, 1000}});
BENCHMARK_TEMPLATE(BM_Simulate, eoe::Engine::Leap)->ArgsProduct({{0, 1, 2}, {10, 1000, 100000}});

}  // namespace

BENCHMARK_MAIN();
