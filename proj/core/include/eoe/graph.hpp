#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eoe {

using Vertex = std::uint32_t;

enum class Family { Complete, CompleteBipartite, Ring, Generic };

std::string_view to_string(Family f) noexcept;

/// Finite, undirected, connected simple graph.
///
/// Family graphs answer neighbor queries arithmetically, so K_n for large n
/// costs no storage. Generic graphs keep sorted adjacency lists. For the
/// bipartite family, vertices [0, m) form one side and [m, n) the other.
class Graph {
 public:
  Family family() const noexcept { return family_; }
  std::uint32_t size() const noexcept { return n_; }
  /// Side size m for CompleteBipartite, 0 otherwise.
  std::uint32_t partition() const noexcept { return m_; }

  std::uint32_t degree(Vertex v) const;
  /// k-th neighbor of v, 0 <= k < degree(v). Neighbors come in increasing order.
  Vertex neighbor(Vertex v, std::uint32_t k) const;
  bool adjacent(Vertex u, Vertex v) const;

  std::uint64_t edge_count() const;
  /// All edges as (u, v) with u < v, lexicographically ordered.
  std::vector<std::pair<Vertex, Vertex>> edges() const;
  /// Lexicographically first edge; the canonical distance-one start.
  std::pair<Vertex, Vertex> first_edge() const;

  /// Generic graphs only: the caller vouches for edge-transitivity.
  bool edge_transitive_asserted() const noexcept { return edge_transitive_; }

  /// Round-trippable descriptor such as "complete:10", "bipartite:2:6", "ring:6".
  std::string descriptor() const;

  friend Graph build_complete(std::uint32_t n);
  friend Graph build_bipartite(std::uint32_t m, std::uint32_t n);
  friend Graph build_ring(std::uint32_t n);
  friend Graph build_generic(std::uint32_t n, std::vector<std::pair<Vertex, Vertex>> edges,
                             bool edge_transitive, std::string label);

 private:
  Graph() = default;

  Family family_ = Family::Generic;
  std::uint32_t n_ = 0;
  std::uint32_t m_ = 0;
  bool edge_transitive_ = true;
  std::string label_;
  std::vector<std::vector<Vertex>> adjacency_;
};

Graph build_complete(std::uint32_t n);
Graph build_bipartite(std::uint32_t m, std::uint32_t n);
Graph build_ring(std::uint32_t n);
/// Throws InvalidGraph on self-loops, out-of-range vertices or a disconnected graph.
/// Duplicate and reversed edges collapse.
Graph build_generic(std::uint32_t n, std::vector<std::pair<Vertex, Vertex>> edges,
                    bool edge_transitive = true, std::string label = "generic");

/// Edge list text: one "u v" pair per line, 0-indexed; blank lines and '#' comments skipped.
Graph parse_edge_list(std::string_view text, std::string label = "generic");
Graph load_edge_list(const std::filesystem::path& path);

/// "complete:n", "bipartite:m:n", "ring:n" or "generic:<edge-list path>".
Graph parse_graph_spec(std::string_view spec);

}  // namespace eoe
