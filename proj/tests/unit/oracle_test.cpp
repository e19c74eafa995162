#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "eoe/error.hpp"
#include "eoe/meeting_chain.hpp"
#include "eoe/oracle.hpp"
#include "eoe/transforms.hpp"
#include "reference.hpp"

namespace eoe::oracle {
namespace {

namespace ref = eoe::testing;

TEST(JointChain, StateCount) {
  // n^2 position pairs times 4 health pairs, minus the 2n co-located mixed
  // states, minus the n^2 absorbed states.
  for (std::uint32_t n : {2u, 3u, 6u}) {
    const JointChain c(build_complete(n), 1.0, 1.0);
    EXPECT_EQ(c.size(), 3u * n * n - 2u * n);
    for (const auto& st : c.states()) {
      EXPECT_TRUE(st.valid());
      EXPECT_FALSE(st.absorbed());
    }
  }
}

TEST(JointChain, ExitRates) {
  const Graph g = build_ring(5);
  const JointChain c(g, 0.7, 1.3);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& st = c.states()[i];
    const int infected = (st.h1 == Health::I) + (st.h2 == Health::I);
    EXPECT_NEAR(c.rows()[i].exit_rate(), 2 * 0.7 + 1.3 * infected, 1e-14);
    for (const auto& [to, rate] : c.rows()[i].rates) {
      EXPECT_LT(to, c.size());
      EXPECT_GT(rate, 0.0);
    }
    EXPECT_EQ(c.index_of(st), i);
  }
}

TEST(JointChain, CapIsEnforced) {
  try {
    JointChain c(build_complete(40), 1.0, 1.0);
    FAIL() << "expected TooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(JointLaplace, K2IsProperAndMatchesTransform) {
  const Graph g = build_complete(2);
  const double v = exact_laplace_T_joint(g, 1.0, 1.0, 1.0);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1.0);
  EXPECT_NEAR(v, laplace_T_from_N(transform_N(g), 1.0, 1.0, 1.0), 1e-12);
  EXPECT_NEAR(exact_laplace_T_joint(g, 1.0, 1.0, 1e-10), 1.0, 1e-8);
}

TEST(JointLaplace, FastRecoveryApproachesSeparationPlusMaxOfRecoveries) {
  // The agents start co-located, so no recovery sticks before the first jump
  // (Exp(2 lambda)). After it, with gamma >> lambda, T is the max of two
  // recovery times.
  const Graph g = build_complete(3);
  const double lambda = 1.0, s = 1.0;
  double prev_gap = INFINITY;
  for (double gamma : {1e2, 1e4, 1e6}) {
    const double separate = 2.0 * lambda / (2.0 * lambda + s);
    const double max_recovery = 2.0 * gamma * gamma / ((s + gamma) * (s + 2.0 * gamma));
    const double gap = std::fabs(exact_laplace_T_joint(g, lambda, gamma, s) - separate * max_recovery);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-5);
}

TEST(JointLaplace, MatchesLumpedReference) {
  struct Case {
    Graph g;
    ref::ClassWalk w;
  };
  const std::vector<Case> cases = {
      {build_complete(5), ref::class_walk_complete(5)},
      {build_bipartite(2, 5), ref::class_walk_bipartite(2, 5)},
      {build_ring(7), ref::class_walk_ring(7)},
  };
  for (const auto& c : cases)
    for (double s : {0.1, 1.0, 5.0})
      EXPECT_NEAR(exact_laplace_T_joint(c.g, 1.5, 0.5, s), ref::lumped_laplace_T(c.w, 1.5, 0.5, s), 1e-11);
}

TEST(JointLaplace, StartVertexDoesNotMatterOnTransitiveGraphs) {
  const Graph g = build_ring(6);
  const double v0 = exact_laplace_T_joint(g, 1.0, 0.5, 0.7, 0);
  for (Vertex v = 1; v < 6; ++v) EXPECT_NEAR(exact_laplace_T_joint(g, 1.0, 0.5, 0.7, v), v0, 1e-13);
}

TEST(PairLaplace, CompleteGraph) {
  for (std::uint32_t n : {3u, 6u}) {
    const Graph g = build_complete(n);
    for (double s : {0.2, 1.0, 4.0})
      EXPECT_NEAR(exact_laplace_M_pair(g, 0.8, s, 0, 1), 1.6 / (1.6 + (n - 1) * s), 1e-13);
  }
}

TEST(PairLaplace, AllRingEdgesAgree) {
  const Graph g = build_ring(6);
  const double v = exact_laplace_M_pair(g, 1.0, 0.9, 0, 1);
  for (const auto& [a, b] : g.edges()) {
    EXPECT_NEAR(exact_laplace_M_pair(g, 1.0, 0.9, a, b), v, 1e-13);
    EXPECT_NEAR(exact_laplace_M_pair(g, 1.0, 0.9, b, a), v, 1e-13);
  }
}

TEST(PairLaplace, MatchesChangeOfVariables) {
  for (const Graph& g : {build_bipartite(2, 6), build_ring(8), build_ring(5)}) {
    const auto lm = laplace_M_from_N(transform_N_generic(pair_chain(g), TransformContext::of(g)), 1.3);
    const auto [a, b] = g.first_edge();
    for (double s : {0.1, 1.0, 6.0}) EXPECT_NEAR(exact_laplace_M_pair(g, 1.3, s, a, b), lm(s), 1e-10);
  }
}

TEST(PmfN, BipartiteIsOdd) {
  const auto p = exact_pmf_N(meeting_chain(build_bipartite(2, 6)), 40);
  EXPECT_NEAR(p.pmf[0], 0.375, 1e-15);
  for (std::size_t k = 2; k <= 40; k += 2) EXPECT_EQ(p.pmf[k - 1], 0.0);
}

TEST(PmfN, TriangleIsGeometricHalf) {
  const auto p = exact_pmf_N(meeting_chain(build_complete(3)), 30);
  for (std::size_t k = 1; k <= 30; ++k) EXPECT_NEAR(p.pmf[k - 1], std::ldexp(1.0, -static_cast<int>(k)), 1e-16);
}

TEST(PmfN, MassIsConserved) {
  for (const Graph& g : {build_complete(7), build_bipartite(3, 10), build_ring(12), build_ring(9)})
    for (std::size_t k : {1u, 5u, 300u}) {
      const auto p = exact_pmf_N(meeting_chain(g), k);
      double total = p.tail;
      for (double x : p.pmf) total += x;
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(RingRecursion, MatchesClosedFormAndSolve) {
  for (std::uint32_t n = 4; n <= 200; n += 2)
    for (double s : {0.01, 1.0, 4.0}) EXPECT_NEAR(ring_recursion_solve(n, s), laplace_N_ring(n, s), 1e-10);
  EXPECT_NEAR(ring_recursion_solve(6, 1.0), laplace_N_generic(meeting_chain(build_ring(6)), 1.0), 1e-12);
}

TEST(RingRecursion, QSequenceIsPowerSum) {
  for (double s : {0.05, 0.5, 3.0}) {
    const RingAux a = RingAux::at(s);
    const auto q = ring_q_sequence(a.alpha, 11);
    ASSERT_EQ(q.size(), 11u);
    EXPECT_DOUBLE_EQ(q[0], 1.0);
    EXPECT_NEAR(q[1], 1.0 - 2.0 * a.alpha * a.alpha, 1e-15);
    for (std::size_t j = 0; j <= 10; ++j)
      EXPECT_NEAR(q[j], std::pow(a.x1, j + 1.0) + std::pow(a.x2, j + 1.0), 1e-12) << j;
  }
}

}  // namespace
}  // namespace eoe::oracle
