#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsa/errors.hpp"

namespace tsa {

enum class GraphKind { ring, prism, complete, custom };

const char* graph_kind_name(GraphKind k);
GraphKind graph_kind_from_name(const std::string& name);

/// An undirected, connected, loop-free communication graph on users 1..K.
/// Immutable after construction; the named kinds are regular by construction,
/// custom graphs may have uneven degrees.
class Topology {
 public:
  /// Cycle 1-2-...-K-1.  Degree 2 everywhere.  Requires K >= 3.
  static Topology ring(int K);

  /// Circular ladder on K = 2M users: vertices 1..M form one M-cycle,
  /// M+1..2M the other, with rungs k - (k+M).  Degree 3 everywhere.
  /// Requires M >= 3.
  static Topology prism(int M);

  /// All pairs connected.  Degree K-1 everywhere.  Requires K >= 2.
  static Topology complete(int K);

  /// Arbitrary edge list; validates vertex range, no self-loops, no duplicate
  /// edges, and connectivity.
  static Topology from_edges(int K, std::vector<std::pair<int, int>> edges);

  GraphKind kind() const { return kind_; }
  int user_count() const { return K_; }

  /// Sorted unordered pairs (i, j) with i < j.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Open neighborhood of user k (k excluded), ascending.  1-based.
  const std::vector<int>& neighbors(int k) const;

  int degree(int k) const { return static_cast<int>(neighbors(k).size()); }
  bool has_edge(int i, int j) const;

  /// d when every vertex has degree d, otherwise empty.
  std::optional<int> regular_degree() const;

 private:
  Topology(GraphKind kind, int K, std::vector<std::pair<int, int>> edges);

  GraphKind kind_;
  int K_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> neighbors_;  // index k-1
};

}  // namespace tsa
