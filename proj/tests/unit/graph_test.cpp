#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "eoe/error.hpp"
#include "eoe/graph.hpp"

namespace eoe {
namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no eoe::Error thrown";
  return Errc::InvalidArgument;
}

// Adjacency symmetry, no self-loops, neighbor order and degree agree with adjacent().
void expect_well_formed(const Graph& g) {
  std::uint64_t degree_sum = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    std::set<Vertex> seen;
    for (std::uint32_t k = 0; k < g.degree(v); ++k) {
      const Vertex w = g.neighbor(v, k);
      EXPECT_NE(w, v);
      EXPECT_TRUE(g.adjacent(v, w));
      EXPECT_TRUE(g.adjacent(w, v));
      if (k > 0) {
        EXPECT_LT(g.neighbor(v, k - 1), w);
      }
      seen.insert(w);
    }
    EXPECT_EQ(seen.size(), g.degree(v));
    for (Vertex w = 0; w < g.size(); ++w) EXPECT_EQ(g.adjacent(v, w), seen.count(w) == 1);
    degree_sum += g.degree(v);
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
  EXPECT_EQ(g.edges().size(), g.edge_count());
}

TEST(Complete, TriangleHasDegreeTwo) {
  const Graph g = build_complete(3);
  EXPECT_EQ(g.family(), Family::Complete);
  EXPECT_EQ(g.edge_count(), 3u);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 2u);
  expect_well_formed(g);
}

TEST(Complete, TwoVerticesIsOneEdge) {
  const Graph g = build_complete(2);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges().front(), (std::pair<Vertex, Vertex>{0, 1}));
}

TEST(Complete, TenVertices) {
  const Graph g = build_complete(10);
  EXPECT_EQ(g.edge_count(), 45u);
  for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 9u);
  expect_well_formed(g);
}

TEST(Complete, RejectsTooSmall) {
  EXPECT_EQ(code_of([] { build_complete(1); }), Errc::InvalidSize);
  EXPECT_EQ(code_of([] { build_complete(0); }), Errc::InvalidSize);
}

TEST(Bipartite, StarCenterDegree) {
  const Graph g = build_bipartite(1, 5);
  EXPECT_EQ(g.degree(0), 4u);
  for (Vertex v = 1; v < 5; ++v) EXPECT_EQ(g.degree(v), 1u);
  expect_well_formed(g);
}

TEST(Bipartite, EdgeCounts) {
  EXPECT_EQ(build_bipartite(2, 6).edge_count(), 8u);
  const Graph g = build_bipartite(3, 6);
  EXPECT_EQ(g.edge_count(), 9u);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(g.degree(v), 3u);
  expect_well_formed(g);
}

TEST(Bipartite, SidesAreIndependentSets) {
  const Graph g = build_bipartite(2, 7);
  for (Vertex u = 0; u < 7; ++u)
    for (Vertex v = 0; v < 7; ++v) EXPECT_EQ(g.adjacent(u, v), (u < 2) != (v < 2));
}

TEST(Bipartite, RejectsBadPartition) {
  EXPECT_EQ(code_of([] { build_bipartite(0, 5); }), Errc::InvalidPartition);
  EXPECT_EQ(code_of([] { build_bipartite(5, 5); }), Errc::InvalidPartition);
  EXPECT_EQ(code_of([] { build_bipartite(6, 5); }), Errc::InvalidPartition);
}

TEST(Ring, FourCycle) {
  const Graph g = build_ring(4);
  EXPECT_EQ(g.edge_count(), 4u);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(g.degree(v), 2u);
  EXPECT_TRUE(g.adjacent(0, 3));
  EXPECT_FALSE(g.adjacent(0, 2));
  expect_well_formed(g);
}

TEST(Ring, OddAcceptedAndSingleCycle) {
  const Graph g = build_ring(5);
  expect_well_formed(g);
  // Walking "forward" from 0 visits every vertex once before returning.
  Vertex prev = 0, cur = 1;
  std::set<Vertex> seen{0};
  for (int i = 0; i < 5; ++i) {
    seen.insert(cur);
    const Vertex next = g.neighbor(cur, 0) == prev ? g.neighbor(cur, 1) : g.neighbor(cur, 0);
    prev = cur;
    cur = next;
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_EQ(prev, 0u);
}

TEST(Ring, RejectsTooSmall) { EXPECT_EQ(code_of([] { build_ring(2); }), Errc::InvalidSize); }

TEST(Generic, DedupesAndValidates) {
  const Graph g = build_generic(4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 0}, {0, 1}}, true, "c4");
  EXPECT_EQ(g.family(), Family::Generic);
  EXPECT_EQ(g.edge_count(), 4u);
  expect_well_formed(g);
  EXPECT_EQ(g.descriptor(), "generic:c4");
  EXPECT_TRUE(g.edge_transitive_asserted());
}

TEST(Generic, Errors) {
  EXPECT_EQ(code_of([] { build_generic(3, {{0, 0}, {0, 1}, {1, 2}}); }), Errc::InvalidGraph);
  EXPECT_EQ(code_of([] { build_generic(3, {{0, 3}}); }), Errc::InvalidGraph);
  EXPECT_EQ(code_of([] { build_generic(4, {{0, 1}, {2, 3}}); }), Errc::InvalidGraph);
}

TEST(Generic, EdgeListParsing) {
  const Graph g = parse_edge_list("# square\n0 1\n1 2\n\n2 3  # last side\n3 0\n");
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(code_of([] { parse_edge_list("0 1\n1\n"); }), Errc::InvalidGraph);
  EXPECT_EQ(code_of([] { parse_edge_list("0 x\n"); }), Errc::InvalidArgument);
}

TEST(GraphSpec, FamiliesRoundTrip) {
  for (const char* spec : {"complete:7", "bipartite:2:6", "ring:9"}) {
    const Graph g = parse_graph_spec(spec);
    EXPECT_EQ(g.descriptor(), spec);
  }
  EXPECT_EQ(parse_graph_spec("bipartite:2:6").partition(), 2u);
}

TEST(GraphSpec, GenericFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "eoe_graph_test_edges.txt";
  {
    std::ofstream out(path);
    out << "0 1\n1 2\n2 0\n";
  }
  const Graph g = parse_graph_spec("generic:" + path.string());
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(parse_graph_spec(g.descriptor()).edge_count(), 3u);
  std::filesystem::remove(path);
}

TEST(GraphSpec, Rejects) {
  EXPECT_EQ(code_of([] { parse_graph_spec("complete"); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_graph_spec("torus:4"); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_graph_spec("complete:-3"); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_graph_spec("bipartite:3"); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_graph_spec("ring:2"); }), Errc::InvalidSize);
}

TEST(Graph, FirstEdgeIsLexicographicallySmallest) {
  for (const Graph& g : {build_complete(5), build_bipartite(2, 5), build_ring(6)}) {
    const auto edges = g.edges();
    EXPECT_TRUE(std::is_sorted(edges.begin(), edges.end()));
    EXPECT_EQ(g.first_edge(), edges.front());
  }
}

}  // namespace
}  // namespace eoe
