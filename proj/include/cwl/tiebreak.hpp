#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cwl/graph.hpp"

namespace cwl {

/// Total ranking of the edges of a graph. Rank 0 is the strongest edge in
/// the tie-break order; all ranks are distinct.
class TieBreaker {
 public:
  enum class Kind { Lex, Seeded };

  /// Ranks edges by their canonical (min endpoint, max endpoint) order.
  static TieBreaker lex(const Graph& g);

  /// Deterministic seeded permutation of the lex ranks.
  static TieBreaker seeded(const Graph& g, std::uint64_t seed);

  int rank_of_edge_index(int ei) const { return ranks_[ei]; }
  int rank_of(const Graph& g, int u, int v) const { return ranks_[g.edge_index(u, v)]; }

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Kind kind_ = Kind::Lex;
  std::uint64_t seed_ = 0;
  std::vector<int> ranks_;  // by canonical edge index
};

/// Simple path given by its vertex sequence. A zero-length path is a single
/// vertex. Paths are undirected objects; the stored orientation is from the
/// query vertex toward the target set.
struct LambdaPath {
  std::vector<int> verts;

  int length() const { return static_cast<int>(verts.size()) - 1; }
  bool valid_in(const Graph& g) const;
  /// Sorted ascending ranks of the path's edges.
  std::vector<int> sorted_ranks(const Graph& g, const TieBreaker& tb) const;
  /// True iff both orientations describe the same path.
  bool same_path_as(const LambdaPath& other) const;
};

/// Compares two distinct paths in the tie-broken order: shorter first, and
/// between equal lengths the path owning the lowest-ranked edge of the
/// symmetric difference comes first. Returns -1 if p comes first, +1 if q
/// does. Throws if the paths are identical.
int lambda_compare(const Graph& g, const TieBreaker& tb, const LambdaPath& p,
                   const LambdaPath& q);

/// Result of the layered DP that finds, per vertex, the unique tie-broken
/// least path to a family of disjoint source sets.
struct LambdaField {
  std::vector<int> owner;        // source index per vertex, -1 if unreachable
  std::vector<int> dist;         // distance to owning set, kInfDist if none
  std::vector<int> parent;       // next vertex toward the owning set, -1 at sources
  std::vector<int> parent_rank;  // rank of the edge to parent, -1 at sources

  /// Path from v to its owning set (v first).
  LambdaPath path_from(int v) const;
  /// Ascending edge ranks of path_from(v).
  std::vector<int> ranks_from(int v) const;
};

/// Runs the layered best-path DP from a family of pairwise disjoint vertex
/// sets. Every reachable vertex gets the unique Lambda-least path to the
/// union of the sets; its owner is the set that path ends in.
LambdaField lambda_field(const Graph& g, const TieBreaker& tb,
                         const std::vector<VertexSet>& sources);

/// The unique Lambda-least path from v to the nonempty set X. Throws if X is
/// unreachable from v.
LambdaPath lambda_geodesic(const Graph& g, const TieBreaker& tb, int v, const VertexSet& xs);

/// The unique Lambda-least path with one end in A and the other in B
/// (oriented from A to B). Requires disjoint nonempty sets in one component.
LambdaPath lambda_geodesic_between(const Graph& g, const TieBreaker& tb, const VertexSet& a,
                                   const VertexSet& b);

/// Voronoi partition of V(G) by a family of disjoint connected buildings.
struct VoronoiResult {
  LambdaField field;
  std::vector<VertexSet> cells;  // indexed like the building list

  const VertexSet& cell(int building) const { return cells[building]; }
};

/// Computes the Voronoi partition and asserts the definitional properties:
/// the cells partition V(G), contain their buildings, realize minimum
/// distance, and each cell induces a connected subgraph carrying in-cell
/// geodesics to its building.
VoronoiResult voronoi_partition(const Graph& g, const TieBreaker& tb,
                                const std::vector<VertexSet>& buildings);

/// True iff the Voronoi cells of two distinct buildings touch.
bool adjoins(const VoronoiResult& vr, const Graph& g, int i, int j);

}  // namespace cwl
