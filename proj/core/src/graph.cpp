#include "eoe/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "eoe/error.hpp"

namespace eoe {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Complete: return "complete";
    case Family::CompleteBipartite: return "bipartite";
    case Family::Ring: return "ring";
    case Family::Generic: return "generic";
  }
  return "unknown";
}

std::uint32_t Graph::degree(Vertex v) const {
  switch (family_) {
    case Family::Complete: return n_ - 1;
    case Family::CompleteBipartite: return v < m_ ? n_ - m_ : m_;
    case Family::Ring: return 2;
    case Family::Generic: return static_cast<std::uint32_t>(adjacency_[v].size());
  }
  return 0;
}

Vertex Graph::neighbor(Vertex v, std::uint32_t k) const {
  switch (family_) {
    case Family::Complete: return k < v ? k : k + 1;
    case Family::CompleteBipartite: return v < m_ ? m_ + k : k;
    case Family::Ring: {
      const Vertex lo = (v + n_ - 1) % n_;
      const Vertex hi = (v + 1) % n_;
      if (lo == hi) return lo;
      return (k == 0) == (lo < hi) ? lo : hi;
    }
    case Family::Generic: return adjacency_[v][k];
  }
  return v;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u == v || u >= n_ || v >= n_) return false;
  switch (family_) {
    case Family::Complete: return true;
    case Family::CompleteBipartite: return (u < m_) != (v < m_);
    case Family::Ring: {
      const Vertex d = u > v ? u - v : v - u;
      return d == 1 || d == n_ - 1;
    }
    case Family::Generic: {
      const auto& adj = adjacency_[u];
      return std::binary_search(adj.begin(), adj.end(), v);
    }
  }
  return false;
}

std::uint64_t Graph::edge_count() const {
  const std::uint64_t n = n_;
  switch (family_) {
    case Family::Complete: return n * (n - 1) / 2;
    case Family::CompleteBipartite: return std::uint64_t{m_} * (n - m_);
    case Family::Ring: return n;
    case Family::Generic: {
      std::uint64_t twice = 0;
      for (const auto& adj : adjacency_) twice += adj.size();
      return twice / 2;
    }
  }
  return 0;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    const std::uint32_t d = degree(u);
    for (std::uint32_t k = 0; k < d; ++k) {
      const Vertex v = neighbor(u, k);
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::pair<Vertex, Vertex> Graph::first_edge() const {
  for (Vertex u = 0; u < n_; ++u) {
    const std::uint32_t d = degree(u);
    for (std::uint32_t k = 0; k < d; ++k) {
      const Vertex v = neighbor(u, k);
      if (u < v) return {u, v};
    }
  }
  throw Error(Errc::InvalidGraph, "graph has no edges");
}

std::string Graph::descriptor() const {
  switch (family_) {
    case Family::Complete: return "complete:" + std::to_string(n_);
    case Family::CompleteBipartite:
      return "bipartite:" + std::to_string(m_) + ":" + std::to_string(n_);
    case Family::Ring: return "ring:" + std::to_string(n_);
    case Family::Generic: return "generic:" + label_;
  }
  return {};
}

Graph build_complete(std::uint32_t n) {
  if (n < 2) throw Error(Errc::InvalidSize, "complete graph needs n >= 2, got " + std::to_string(n));
  Graph g;
  g.family_ = Family::Complete;
  g.n_ = n;
  return g;
}

Graph build_bipartite(std::uint32_t m, std::uint32_t n) {
  if (m == 0 || m >= n)
    throw Error(Errc::InvalidPartition,
                "bipartite graph needs 1 <= m < n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  Graph g;
  g.family_ = Family::CompleteBipartite;
  g.n_ = n;
  g.m_ = m;
  return g;
}

Graph build_ring(std::uint32_t n) {
  if (n < 3) throw Error(Errc::InvalidSize, "ring needs n >= 3, got " + std::to_string(n));
  Graph g;
  g.family_ = Family::Ring;
  g.n_ = n;
  return g;
}

Graph build_generic(std::uint32_t n, std::vector<std::pair<Vertex, Vertex>> edges, bool edge_transitive,
                    std::string label) {
  if (n < 2) throw Error(Errc::InvalidSize, "generic graph needs n >= 2");
  Graph g;
  g.family_ = Family::Generic;
  g.n_ = n;
  g.edge_transitive_ = edge_transitive;
  g.label_ = std::move(label);
  g.adjacency_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw Error(Errc::InvalidGraph, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw Error(Errc::InvalidGraph, "self-loop at vertex " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::uint32_t reached = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : g.adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != n) throw Error(Errc::InvalidGraph, "graph is not connected");
  return g;
}

namespace {

std::uint32_t parse_uint(std::string_view text, std::string_view what) {
  std::uint32_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw Error(Errc::InvalidArgument, "bad " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Graph parse_edge_list(std::string_view text, std::string label) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::uint32_t n = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra))
      throw Error(Errc::InvalidGraph, "edge list line " + std::to_string(lineno) + ": expected 'u v'");
    const Vertex u = parse_uint(a, "vertex");
    const Vertex v = parse_uint(b, "vertex");
    n = std::max({n, u + 1, v + 1});
    edges.emplace_back(u, v);
  }
  return build_generic(n, std::move(edges), true, std::move(label));
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open edge list " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str(), path.string());
}

Graph parse_graph_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::InvalidArgument, "graph spec '" + std::string(spec) + "' lacks a family prefix");
  const auto kind = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (kind == "generic") return load_edge_list(std::filesystem::path(std::string(rest)));

  const auto parts = split(rest, ':');
  if (kind == "complete" && parts.size() == 1) return build_complete(parse_uint(parts[0], "n"));
  if (kind == "ring" && parts.size() == 1) return build_ring(parse_uint(parts[0], "n"));
  if (kind == "bipartite" && parts.size() == 2)
    return build_bipartite(parse_uint(parts[0], "m"), parse_uint(parts[1], "n"));
  throw Error(Errc::InvalidArgument, "unrecognised graph spec '" + std::string(spec) + "'");
}

}  // namespace eoe
