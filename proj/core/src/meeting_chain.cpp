#include "eoe/meeting_chain.hpp"

#include <cmath>

#include "eoe/error.hpp"

namespace eoe {

MeetingChain::MeetingChain(std::vector<std::string> labels, Eigen::MatrixXd kernel, std::size_t absorbing,
                           std::size_t start)
    : labels_(std::move(labels)), kernel_(std::move(kernel)), absorbing_(absorbing), start_(start) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (kernel_.rows() != n || kernel_.cols() != n)
    throw Error(Errc::InvalidArgument, "kernel shape does not match state labels");
  if (absorbing_ >= labels_.size() || start_ >= labels_.size())
    throw Error(Errc::InvalidArgument, "absorbing/start state out of range");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::fabs(kernel_.row(i).sum() - 1.0) > 1e-12)
      throw Error(Errc::InvalidArgument, "kernel row " + labels_[static_cast<std::size_t>(i)] + " does not sum to 1");
  }
}

namespace {

MeetingChain complete_chain(std::uint32_t n) {
  const double q = 1.0 / static_cast<double>(n - 1);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
  p(0, 0) = 1.0;
  p(1, 0) = q;
  p(1, 1) = 1.0 - q;
  return MeetingChain({"met", "apart"}, std::move(p), 0, 1);
}

MeetingChain bipartite_chain(std::uint32_t m, std::uint32_t n) {
  const double meet = 0.5 * (1.0 / m + 1.0 / (n - m));
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
  p(0, 0) = 1.0;
  p(1, 0) = meet;
  p(1, 2) = 1.0 - meet;
  p(2, 1) = 1.0;
  return MeetingChain({"met", "d1", "d2"}, std::move(p), 0, 1);
}

MeetingChain ring_chain(std::uint32_t n) {
  const std::uint32_t far = n / 2;
  const auto states = static_cast<Eigen::Index>(far + 1);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(states, states);
  p(0, 0) = 1.0;
  for (std::uint32_t d = 1; d <= far; ++d) {
    if (d < far) {
      p(d, d - 1) = 0.5;
      p(d, d + 1) = 0.5;
    } else if (n % 2 == 0) {
      p(d, d - 1) = 1.0;
    } else {
      // Odd ring: from the farthest distance one move closes the gap, the other keeps it.
      p(d, d - 1) = 0.5;
      p(d, d) += 0.5;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(far + 1);
  labels.emplace_back("met");
  for (std::uint32_t d = 1; d <= far; ++d) labels.push_back("d" + std::to_string(d));
  return MeetingChain(std::move(labels), std::move(p), 0, 1);
}

}  // namespace

MeetingChain pair_chain(const Graph& g, std::pair<Vertex, Vertex> start_edge) {
  const std::uint32_t n = g.size();
  if (!g.adjacent(start_edge.first, start_edge.second))
    throw Error(Errc::InvalidArgument, "start pair is not an edge");

  // State 0 is "met"; unordered pair {u < v} maps to 1 + index.
  auto index = [n](Vertex u, Vertex v) -> Eigen::Index {
    if (u > v) std::swap(u, v);
    const std::uint64_t uu = u;
    return static_cast<Eigen::Index>(1 + uu * (2ull * n - uu - 1) / 2 + (v - u - 1));
  };
  const auto states = static_cast<Eigen::Index>(1 + std::uint64_t{n} * (n - 1) / 2);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(states, states);
  std::vector<std::string> labels(static_cast<std::size_t>(states));
  labels[0] = "met";
  p(0, 0) = 1.0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const Eigen::Index from = index(u, v);
      labels[static_cast<std::size_t>(from)] = std::to_string(u) + "-" + std::to_string(v);
      for (auto [mover, other] : {std::pair{u, v}, std::pair{v, u}}) {
        const std::uint32_t d = g.degree(mover);
        const double w = 0.5 / d;
        for (std::uint32_t k = 0; k < d; ++k) {
          const Vertex to = g.neighbor(mover, k);
          p(from, to == other ? 0 : index(to, other)) += w;
        }
      }
    }
  }
  return MeetingChain(std::move(labels), std::move(p), 0,
                      static_cast<std::size_t>(index(start_edge.first, start_edge.second)));
}

MeetingChain pair_chain(const Graph& g) { return pair_chain(g, g.first_edge()); }

MeetingChain meeting_chain(const Graph& g) {
  switch (g.family()) {
    case Family::Complete: return complete_chain(g.size());
    case Family::CompleteBipartite: return bipartite_chain(g.partition(), g.size());
    case Family::Ring: return ring_chain(g.size());
    case Family::Generic: return pair_chain(g);
  }
  throw Error(Errc::InvalidGraph, "unknown family");
}

}  // namespace eoe
