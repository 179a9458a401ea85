#include "tsa/topology.hpp"

#include <algorithm>
#include <set>

namespace tsa {

const char* graph_kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::ring: return "ring";
    case GraphKind::prism: return "prism";
    case GraphKind::complete: return "complete";
    case GraphKind::custom: return "custom";
  }
  return "custom";
}

GraphKind graph_kind_from_name(const std::string& name) {
  if (name == "ring") return GraphKind::ring;
  if (name == "prism") return GraphKind::prism;
  if (name == "complete") return GraphKind::complete;
  if (name == "custom") return GraphKind::custom;
  fail(errc::parse_error, "unknown graph kind '" + name + "'");
}

Topology::Topology(GraphKind kind, int K, std::vector<std::pair<int, int>> edges)
    : kind_(kind), K_(K) {
  if (K < 2) fail(errc::too_small, "a graph needs at least 2 users");
  std::set<std::pair<int, int>> seen;
  for (auto& [i, j] : edges) {
    if (i < 1 || i > K || j < 1 || j > K)
      fail(errc::bad_vertex, "edge endpoint out of range 1.." + std::to_string(K));
    if (i == j) fail(errc::invalid_topology, "self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second)
      fail(errc::invalid_topology, "duplicate edge " + std::to_string(i) + "-" + std::to_string(j));
  }
  edges_.assign(seen.begin(), seen.end());

  neighbors_.assign(K, {});
  for (auto [i, j] : edges_) {
    neighbors_[i - 1].push_back(j);
    neighbors_[j - 1].push_back(i);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());

  // connectivity by traversal
  std::vector<bool> visited(K, false);
  std::vector<int> stack{1};
  visited[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : neighbors_[v - 1]) {
      if (!visited[w - 1]) {
        visited[w - 1] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != K) fail(errc::invalid_topology, "graph is not connected");
}

Topology Topology::ring(int K) {
  if (K < 3) fail(errc::too_small, "ring requires K >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int k = 1; k <= K; ++k) edges.push_back({k, k % K + 1});
  return Topology(GraphKind::ring, K, std::move(edges));
}

Topology Topology::prism(int M) {
  if (M < 3) fail(errc::too_small, "prism requires M >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int k = 1; k <= M; ++k) {
    edges.push_back({k, k % M + 1});          // inner cycle
    edges.push_back({M + k, M + k % M + 1});  // outer cycle
    edges.push_back({k, k + M});              // rung
  }
  return Topology(GraphKind::prism, 2 * M, std::move(edges));
}

Topology Topology::complete(int K) {
  if (K < 2) fail(errc::too_small, "complete graph requires K >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= K; ++i)
    for (int j = i + 1; j <= K; ++j) edges.push_back({i, j});
  return Topology(GraphKind::complete, K, std::move(edges));
}

Topology Topology::from_edges(int K, std::vector<std::pair<int, int>> edges) {
  return Topology(GraphKind::custom, K, std::move(edges));
}

const std::vector<int>& Topology::neighbors(int k) const {
  if (k < 1 || k > K_) fail(errc::bad_vertex, "no user " + std::to_string(k));
  return neighbors_[k - 1];
}

bool Topology::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

std::optional<int> Topology::regular_degree() const {
  int d = degree(1);
  for (int k = 2; k <= K_; ++k)
    if (degree(k) != d) return std::nullopt;
  return d;
}

}  // namespace tsa
