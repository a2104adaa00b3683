#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwl {

/// Distance value for unreachable pairs.
inline constexpr int kInfDist = std::numeric_limits<int>::max();

/// Sorted vector of distinct vertex ids. All set-valued arguments and
/// results in this library use this canonical form.
using VertexSet = std::vector<int>;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite simple undirected graph on vertices 0..n-1.
///
/// Immutable after construction; adjacency lists are sorted ascending so
/// every iteration order in the library is canonical. All distances used
/// anywhere are distances in this ambient graph, never in an induced
/// subgraph.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Duplicate pairs collapse; loops and
  /// out-of-range endpoints are errors.
  static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<int>& neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
  }

  /// Canonical edge list: each edge (u,v) with u<v, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int u, int v) const;

  /// Index of edge {u,v} in the canonical edge list.
  int edge_index(int u, int v) const;

  /// BFS distance between two vertices; kInfDist when disconnected.
  int distance(int u, int v) const;

  /// Minimum distance between two nonempty sets; 0 if they intersect.
  int set_distance(const VertexSet& xs, const VertexSet& ys) const;

  /// Distances from a source set to every vertex (kInfDist if unreachable).
  /// When `max_depth` >= 0 the search stops at that depth; farther vertices
  /// report kInfDist.
  std::vector<int> multi_source_distances(const VertexSet& sources, int max_depth = -1) const;

  /// All vertices within distance r of the nonempty set X.
  VertexSet ball(const VertexSet& xs, int r) const;

  /// Vertices of X having a neighbor outside X.
  VertexSet boundary(const VertexSet& xs) const;

  /// True iff the sets intersect or some edge joins them.
  bool touches(const VertexSet& xs, const VertexSet& ys) const;

  /// True iff X is nonempty and G[X] is connected.
  bool is_connected_induced(const VertexSet& xs) const;

  bool is_connected() const;

  /// Connected components, each a sorted vertex set, ordered by minimum vertex.
  std::vector<VertexSet> components() const;

  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw GraphError("vertex id " + std::to_string(v) + " out of range [0," +
                       std::to_string(n_) + ")");
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
};

/// Sorts and dedupes into canonical VertexSet form.
VertexSet make_vertex_set(std::vector<int> vs);

bool set_contains(const VertexSet& xs, int v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool sets_intersect(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

/// Membership mask over 0..n-1 for hot loops.
std::vector<char> make_mask(int n, const VertexSet& xs);

}  // namespace cwl
