#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eoe/graph.hpp"
#include "eoe/health.hpp"
#include "eoe/meeting_chain.hpp"

namespace eoe::oracle {

using ::eoe::Health;

/// Joint configuration of both agents. Co-located agents with mixed health
/// are not a state: such transitions are redirected to co-located (I, I).
struct JointChainState {
  Vertex w1;
  Vertex w2;
  Health h1;
  Health h2;

  bool absorbed() const noexcept { return h1 == Health::S && h2 == Health::S; }
  bool valid() const noexcept { return w1 != w2 || h1 == h2; }
  friend bool operator==(const JointChainState&, const JointChainState&) = default;
};

/// Outgoing rates of one transient state. Targets index the transient state
/// list; the rate into the absorbing set (both susceptible) is kept apart.
/// Self-loops (a co-located recovery that reinfects at once) appear as
/// targets equal to the row's own index.
struct GeneratorRow {
  std::vector<std::pair<std::size_t, double>> rates;
  double to_absorbing = 0.0;

  double exit_rate() const noexcept;
};

/// Transient part of the walk + SIS chain on a graph.
class JointChain {
 public:
  static constexpr std::size_t kMaxStates = 4000;

  /// Throws TooLarge when the transient state count exceeds kMaxStates.
  JointChain(const Graph& g, double lambda, double gamma);

  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<JointChainState>& states() const noexcept { return states_; }
  const std::vector<GeneratorRow>& rows() const noexcept { return rows_; }
  std::size_t index_of(const JointChainState& s) const;

  /// Laplace transform of the absorption time from `from`.
  double laplace_absorption(std::size_t from, double s) const;

 private:
  std::uint32_t n_;
  std::vector<JointChainState> states_;
  std::vector<std::size_t> index_;  // dense (w1, w2, health) -> state index
  std::vector<GeneratorRow> rows_;
};

/// L_T(s) from both agents infected and co-located at `start`.
double exact_laplace_T_joint(const Graph& g, double lambda, double gamma, double s, Vertex start = 0);

/// Laplace transform of the first time two walkers starting at i != j share a vertex.
double exact_laplace_M_pair(const Graph& g, double lambda, double s, Vertex i, Vertex j);

/// P(N = k) for k = 1..k_max by kernel powering, plus the remaining tail mass.
struct PmfN {
  std::vector<double> pmf;  // pmf[k-1] = P(N = k)
  double tail = 0.0;        // P(N > k_max)

  double mean_truncated() const;
};
PmfN exact_pmf_N(const MeetingChain& chain, std::size_t k_max);

/// C_1 from the backward recursion C_{n/2} = 2 alpha, C_i = alpha / (1 - alpha C_{i+1}).
double ring_recursion_solve(std::uint32_t n, double s);

/// Q_j(alpha) from Q_0 = 1, Q_1 = 1 - 2 alpha^2, Q_j = Q_{j-1} - alpha^2 Q_{j-2}.
std::vector<double> ring_q_sequence(double alpha, std::size_t count);

}  // namespace eoe::oracle
