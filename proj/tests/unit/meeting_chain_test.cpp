#include <cmath>

#include <gtest/gtest.h>

#include "eoe/graph.hpp"
#include "eoe/meeting_chain.hpp"
#include "eoe/oracle.hpp"

namespace eoe {
namespace {

void expect_stochastic(const MeetingChain& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      EXPECT_GE(c.step(i, j), 0.0);
      row += c.step(i, j);
    }
    EXPECT_NEAR(row, 1.0, 1e-14) << "row " << c.labels()[i];
  }
  EXPECT_DOUBLE_EQ(c.step(c.absorbing(), c.absorbing()), 1.0);
}

double total_variation(const oracle::PmfN& a, const oracle::PmfN& b) {
  double d = std::fabs(a.tail - b.tail);
  for (std::size_t k = 0; k < a.pmf.size(); ++k) d += std::fabs(a.pmf[k] - b.pmf[k]);
  return d / 2.0;
}

std::vector<Graph> family_graphs(std::uint32_t n_max) {
  std::vector<Graph> gs;
  for (std::uint32_t n = 2; n <= n_max; ++n) gs.push_back(build_complete(n));
  for (std::uint32_t n = 2; n <= n_max; ++n)
    for (std::uint32_t m = 1; m <= n / 2; ++m) gs.push_back(build_bipartite(m, n));
  for (std::uint32_t n = 3; n <= n_max; ++n) gs.push_back(build_ring(n));
  return gs;
}

TEST(MeetingChain, ReducedChainsAreStochastic) {
  for (const Graph& g : family_graphs(12)) {
    SCOPED_TRACE(g.descriptor());
    expect_stochastic(meeting_chain(g));
  }
}

TEST(MeetingChain, PairChainsAreStochastic) {
  for (const Graph& g : family_graphs(7)) {
    SCOPED_TRACE(g.descriptor());
    expect_stochastic(pair_chain(g));
  }
}

TEST(MeetingChain, CompleteMeetProbability) {
  for (std::uint32_t n : {2u, 3u, 10u, 1000u}) {
    const MeetingChain c = meeting_chain(build_complete(n));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_DOUBLE_EQ(c.step(c.start(), c.absorbing()), 1.0 / (n - 1));
  }
}

TEST(MeetingChain, BipartiteMeetProbability) {
  for (auto [m, n] : {std::pair{1u, 5u}, {2u, 6u}, {3u, 9u}, {40u, 100u}}) {
    const MeetingChain c = meeting_chain(build_bipartite(m, n));
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(c.step(c.start(), c.absorbing()), 0.5 * (1.0 / m + 1.0 / (n - m)), 1e-15);
    // From distance one a non-meeting jump always lands on the same side.
    EXPECT_NEAR(c.step(c.start(), c.start()), 0.0, 0.0);
  }
}

TEST(MeetingChain, RingFarStateOnEvenRingMovesInward) {
  for (std::uint32_t n : {4u, 6u, 10u, 20u}) {
    const MeetingChain c = meeting_chain(build_ring(n));
    ASSERT_EQ(c.size(), n / 2 + 1);
    EXPECT_DOUBLE_EQ(c.step(n / 2, n / 2 - 1), 1.0);
  }
}

TEST(MeetingChain, RingFarStateOnOddRingStaysWithHalf) {
  const MeetingChain c = meeting_chain(build_ring(7));
  ASSERT_EQ(c.size(), 4u);
  EXPECT_DOUBLE_EQ(c.step(3, 3), 0.5);
  EXPECT_DOUBLE_EQ(c.step(3, 2), 0.5);
}

TEST(MeetingChain, ReducedMatchesPairChainInLaw) {
  for (const Graph& g : family_graphs(12)) {
    SCOPED_TRACE(g.descriptor());
    const auto reduced = oracle::exact_pmf_N(meeting_chain(g), 200);
    const auto full = oracle::exact_pmf_N(pair_chain(g), 200);
    EXPECT_LE(total_variation(reduced, full), 1e-12);
  }
}

TEST(MeetingChain, GenericLawDoesNotDependOnStartEdge) {
  const std::vector<Graph> gs = {
      build_generic(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, true, "c6"),
      // Petersen graph: edge-transitive, 10 vertices.
      build_generic(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                         {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}},
                    true, "petersen"),
      build_bipartite(3, 7),
  };
  for (const Graph& g : gs) {
    SCOPED_TRACE(g.descriptor());
    const auto reference = oracle::exact_pmf_N(pair_chain(g), 150);
    for (const auto& e : g.edges()) EXPECT_LE(total_variation(reference, oracle::exact_pmf_N(pair_chain(g, e), 150)), 1e-12);
  }
}

TEST(MeetingChain, GenericGraphUsesPairChain) {
  const Graph g = build_generic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, true, "c4");
  // Unordered pairs of 4 vertices plus "met".
  EXPECT_EQ(meeting_chain(g).size(), 7u);
}

}  // namespace
}  // namespace eoe
