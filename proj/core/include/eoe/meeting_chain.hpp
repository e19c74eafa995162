#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eoe/graph.hpp"

namespace eoe {

/// Embedded jump chain of the two walkers' configuration, observed at jump
/// instants. Each step moves one of the two walkers (each with probability
/// 1/2) to a uniform neighbor. The absorbing state is "met".
class MeetingChain {
 public:
  MeetingChain(std::vector<std::string> labels, Eigen::MatrixXd kernel, std::size_t absorbing,
               std::size_t start);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Eigen::MatrixXd& kernel() const noexcept { return kernel_; }
  double step(std::size_t from, std::size_t to) const { return kernel_(from, to); }
  std::size_t absorbing() const noexcept { return absorbing_; }
  /// The distance-one class.
  std::size_t start() const noexcept { return start_; }

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd kernel_;
  std::size_t absorbing_;
  std::size_t start_;
};

/// Reduced chain for family graphs:
///   Complete  -> {met, apart}
///   Bipartite -> {met, d1, d2}
///   Ring      -> distances 0..floor(n/2)
/// and the full unordered-pair chain for Generic graphs.
MeetingChain meeting_chain(const Graph& g);

/// Full unordered-pair chain for any graph, started on `start_edge`
/// (defaults to the graph's first edge).
MeetingChain pair_chain(const Graph& g);
MeetingChain pair_chain(const Graph& g, std::pair<Vertex, Vertex> start_edge);

}  // namespace eoe
