#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cwl/graph.hpp"
#include "cwl/tiebreak.hpp"

namespace cwl {

/// The tree H_ell: every vertex of degree one or three, every root-to-leaf
/// path of length exactly ell. Vertices are numbered in BFS order from the
/// root (vertex 0), so the three root branches are the subtrees of 1, 2, 3.
struct PatternTree {
  int ell = 0;
  Graph tree;
  std::vector<int> parent;                 // -1 at the root
  std::vector<int> depth;
  std::vector<std::vector<int>> children;  // ascending
  std::vector<int> branch;                 // root-branch index 0..2, -1 at the root

  int vertex_count() const { return tree.vertex_count(); }
  /// Pattern vertices of the subtree rooted at v (including v).
  std::vector<int> subtree(int v) const;
};

PatternTree build_pattern_tree(int ell);

/// True iff `tree` is (isomorphic to, under the canonical numbering) H_ell.
bool is_pattern_tree_shape(const Graph& tree, int ell);

struct ModelCheck {
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }
};

/// Ordinary minor model: one branch set per pattern vertex.
struct MinorModel {
  std::vector<VertexSet> branch_sets;
};

ModelCheck verify_minor_model(const Graph& g, const Graph& pattern, const MinorModel& m);

/// Fat minor model over U(H) = V(H) u E(H): vertex parts indexed by pattern
/// vertex, edge parts by canonical pattern edge index.
struct FatModel {
  long long c = 0;
  std::vector<VertexSet> vertex_parts;
  std::vector<VertexSet> edge_parts;

  /// Union of every part.
  VertexSet all_vertices() const;
};

/// Checks the c-fat axioms with ambient distances: nonempty connected
/// disjoint parts, an edge of G from each edge part to both endpoint parts,
/// and distance > c between all non-incident part pairs (a vertex part and
/// an incident edge part are exempt).
ModelCheck verify_fat_minor(const Graph& g, const Graph& pattern, const FatModel& m);

/// Fat check plus the superfat branch condition: parts of distinct root
/// branches (including the root edges) are pairwise more than 3c apart.
/// For ell = 0 this is exactly the fat check.
ModelCheck verify_superfat(const Graph& g, const PatternTree& pt, const FatModel& m);

/// Vertex union of root branch i: all parts of the subtree of root child i
/// together with the root edge part e_i.
VertexSet branch_plus(const PatternTree& pt, const FatModel& m, int i);

enum class SearchStatus { Found, Absent, Unknown };

struct MinorSearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<MinorModel> model;
  long long expansions = 0;
};

/// Budgeted backtracking search for a tree-pattern minor (patterns of max
/// degree three, at most 10 vertices). Sound: any Found model verifies.
/// Absent is exact when the budget was not exhausted; otherwise Unknown.
MinorSearchResult find_minor_model(const Graph& g, const Graph& pattern, long long budget);

/// Connected subset of `seed` at distance exactly c+1 from every model
/// union, obtained by peeling the radius-c balls of the models and keeping
/// the component containing `anchor` (or the first component realizing every
/// distance when anchor is -1). Throws when no such component exists.
VertexSet trim_for_claw(const Graph& g, const VertexSet& seed,
                        const std::vector<VertexSet>& model_unions, long long c,
                        int anchor = -1);

/// Combination step: three c-superfat H_t models, pairwise more than 5c+2
/// apart, a connected hub W at distance exactly c+1 from each model, and one
/// geodesic leg per model, yield a c-superfat H_{t+1} model contained in
/// W u models u legs. The hub becomes the new root part; each model loses
/// the branch its leg approaches and becomes a new root branch; each leg
/// interior (or leg plus absorbed branch) becomes a root edge part.
///
/// The legs run at length c+1 rather than c: with length-c legs the output
/// root part would sit at distance exactly c from the old root parts, which
/// the strict fat-minor inequality forbids.
FatModel claw_combine(const Graph& g, int t, const std::array<FatModel, 3>& models,
                      const VertexSet& w, const std::array<LambdaPath, 3>& legs, long long c);

/// Convenience: Lambda-least legs from W to each model union.
std::array<LambdaPath, 3> make_claw_legs(const Graph& g, const TieBreaker& tb,
                                         const VertexSet& w,
                                         const std::array<FatModel, 3>& models);

struct QuasiIsometryMap {
  std::vector<int> phi;  // total on V(G)
  long long L = 1;
  long long C = 0;
};

/// Exhaustive check of the three quasi-isometry conditions between finite
/// graphs (upper bound, lower bound, C-density of the image).
ModelCheck verify_quasi_isometry(const Graph& g, const Graph& h, const QuasiIsometryMap& q);

struct TransferResult {
  MinorModel model;
  bool constructive = true;  // false when the search fallback produced it
};

/// Fat-minor transfer: a c-fat H-model in G plus an (L,C)-quasi-isometry to
/// G' with c >= L(L+C)+C yields an H-minor model in G'. Constructs branch
/// sets from part images joined within radius L+C, merging each edge part
/// into its lower endpoint's branch; falls back to find_minor_model when the
/// construction fails its own verification.
TransferResult transfer_fat_minor(const Graph& g, const Graph& gp, const QuasiIsometryMap& q,
                                  const Graph& pattern, const FatModel& f, long long budget);

}  // namespace cwl
