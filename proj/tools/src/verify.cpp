#include "eoe/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "eoe/meeting_chain.hpp"
#include "eoe/oracle.hpp"
#include "eoe/simulator.hpp"
#include "eoe/transforms.hpp"

namespace eoe::cli {

namespace {

constexpr double kRates[] = {0.5, 1.0, 2.0};
constexpr double kS[] = {0.1, 0.5, 1.0, 2.0, 5.0};

std::vector<Graph> small_graphs(std::uint32_t n_max) {
  std::vector<Graph> out;
  for (std::uint32_t n = 2; n <= n_max; ++n) out.push_back(build_complete(n));
  for (std::uint32_t m : {1u, 2u})
    for (std::uint32_t n = m + 1; n <= n_max; ++n) out.push_back(build_bipartite(m, n));
  for (std::uint32_t n = 3; n <= n_max; ++n) out.push_back(build_ring(n));
  return out;
}

class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }
  void record(double error) {
    ++result_.cases;
    if (!std::isfinite(error)) error = INFINITY;
    result_.max_error = std::max(result_.max_error, error);
  }
  CheckResult finish() {
    result_.passed = result_.cases > 0 && result_.max_error <= result_.tolerance;
    return result_;
  }

 private:
  CheckResult result_;
};

CheckResult transform_vs_joint_chain(std::uint32_t n_max) {
  Tracker t("transform-vs-joint-chain", 1e-9);
  for (const Graph& g : small_graphs(n_max)) {
    const TransformEvaluator ln = transform_N(g);
    for (double lambda : kRates) {
      const TransformEvaluator lm = laplace_M_from_N(ln, lambda);
      for (double gamma : kRates) {
        const oracle::JointChain chain(g, lambda, gamma);
        const std::size_t start = chain.index_of({0, 0, Health::I, Health::I});
        for (double s : kS) t.record(std::fabs(laplace_T(lm, lambda, gamma, s) - chain.laplace_absorption(start, s)));
      }
    }
  }
  return t.finish();
}

CheckResult transform_paths(std::uint32_t n_max) {
  Tracker t("transform-path-equivalence", 1e-12);
  for (const Graph& g : small_graphs(n_max)) {
    const TransformEvaluator ln = transform_N(g);
    for (double lambda : kRates) {
      const TransformEvaluator lm = laplace_M_from_N(ln, lambda);
      for (double gamma : kRates)
        for (double s : kS) t.record(std::fabs(laplace_T_from_N(ln, lambda, gamma, s) - laplace_T(lm, lambda, gamma, s)));
    }
  }
  return t.finish();
}

CheckResult closed_forms_vs_solve(std::uint32_t ring_max, bool wide_bipartite) {
  Tracker t("closed-form-vs-linear-solve", 1e-10);
  for (std::uint32_t n = 4; n <= ring_max; n += 2) {
    const MeetingChain chain = meeting_chain(build_ring(n));
    for (double s : kS) {
      const double closed = laplace_N_ring(n, s);
      t.record(std::fabs(closed - laplace_N_generic(chain, s)));
      t.record(std::fabs(closed - oracle::ring_recursion_solve(n, s)));
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parts = {{1, 5}, {2, 6}};
  if (wide_bipartite) parts.emplace_back(3, 9);
  for (auto [m, n] : parts) {
    const MeetingChain full = pair_chain(build_bipartite(m, n));
    for (double s : kS) t.record(std::fabs(laplace_N_bipartite(m, n, s) - laplace_N_generic(full, s)));
  }
  for (std::uint32_t n = 2; n <= (wide_bipartite ? 10u : 6u); ++n) {
    const MeetingChain full = pair_chain(build_complete(n));
    for (double s : kS) t.record(std::fabs(laplace_N_complete_exact(n, s) - laplace_N_generic(full, s)));
  }
  return t.finish();
}

CheckResult meeting_vs_pair_chain(std::uint32_t n_max) {
  Tracker t("meeting-transform-vs-pair-chain", 1e-10);
  for (const Graph& g : small_graphs(n_max)) {
    const auto [u, v] = g.first_edge();
    const TransformEvaluator ln = transform_N(g);
    for (double lambda : kRates)
      for (double s : kS)
        t.record(std::fabs(laplace_M_from_N(ln, lambda, s) - oracle::exact_laplace_M_pair(g, lambda, s, u, v)));
  }
  return t.finish();
}

// Largest |z| of the empirical transform against the transform over a few cells.
CheckResult simulator_spot_check() {
  Tracker t("simulator-spot-check-z", 4.5);
  const std::uint64_t reps = 20000;
  for (const Graph& g : {build_complete(4), build_bipartite(2, 5), build_ring(6)}) {
    for (Engine engine : {Engine::Leap, Engine::Event}) {
      const double lambda = 1.0;
      const double gamma = 0.5;
      const SampleSummary sum = run_batch(g, lambda, gamma, reps, 20240601, {0.2, 1.0, 5.0}, {engine, 1, 0});
      const TransformEvaluator lt = laplace_T_from_N(transform_N(g), lambda, gamma);
      for (double s : sum.s_grid()) t.record(std::fabs(sum.transform_at(s) - lt(s)) / sum.transform_se_at(s));
    }
  }
  return t.finish();
}

}  // namespace

std::vector<CheckResult> run_verify_suite(bool quick) {
  const std::uint32_t n_max = quick ? 6 : 10;
  std::vector<CheckResult> out;
  out.push_back(transform_vs_joint_chain(n_max));
  out.push_back(transform_paths(n_max));
  out.push_back(closed_forms_vs_solve(quick ? 6 : 200, !quick));
  out.push_back(meeting_vs_pair_chain(n_max));
  if (!quick) out.push_back(simulator_spot_check());
  return out;
}

}  // namespace eoe::cli
